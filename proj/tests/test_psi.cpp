#include "pellpoly/factor.hpp"
#include "pellpoly/psi.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pellpoly;

namespace {

Poly P(const char* s)
{
    return parse_poly(s);
}

Poly from_ints(const std::vector<long long>& c)
{
    std::vector<Rational> r;
    for (auto x : c)
        r.emplace_back(static_cast<long>(x));
    return Poly(std::move(r));
}

} // namespace

TEST(Arithmetic, TotientAndMoebius)
{
    EXPECT_EQ(totient(1), 1);
    EXPECT_EQ(totient(12), 4);
    EXPECT_EQ(moebius(6), 1);
    EXPECT_EQ(moebius(4), 0);
    EXPECT_EQ(moebius(30), -1);
    for (long n = 1; n <= 300; ++n)
        EXPECT_EQ(totient(n), oracle::totient_by_gcd(n)) << n;
    EXPECT_THROW(totient(0), std::invalid_argument);
}

TEST(Chebyshev, Examples)
{
    EXPECT_EQ(chebyshev_u(0), P("1"));
    EXPECT_EQ(chebyshev_u(1), P("2u"));
    EXPECT_EQ(chebyshev_u(2), P("4u^2 - 1"));
    EXPECT_EQ(chebyshev_u(5), P("32u^5 - 32u^3 + 6u"));
}

TEST(Chebyshev, MatchesSineRatio)
{
    for (long n = 0; n <= 25; ++n) {
        const Poly U = chebyshev_u(n);
        for (double theta : {0.3, 0.77, 1.4, 2.9}) {
            const double want = std::sin((n + 1) * theta) / std::sin(theta);
            EXPECT_NEAR(U.eval(Rational(std::cos(theta))).get_d(), want, 1e-6 * (1 + std::abs(want)));
        }
    }
}

TEST(Psi, Examples)
{
    EXPECT_EQ(psi(2).poly, P("2u"));
    EXPECT_EQ(psi(6).poly, P("4u^2 - 3"));
    EXPECT_EQ(psi(4).poly, P("4u^2 - 2"));
    EXPECT_EQ(psi(5).poly, P("16u^4 - 12u^2 + 1"));
    EXPECT_EQ(psi(5).poly, P("4u^2 - 2u - 1") * P("4u^2 + 2u - 1"));
    EXPECT_EQ(psi(3).poly, P("4u^2 - 1"));
    EXPECT_THROW(psi(1), std::invalid_argument);
}

TEST(Psi, MatchesCosineProduct)
{
    for (long m = 2; m <= 30; ++m)
        EXPECT_EQ(psi(m).poly, from_ints(oracle::psi_by_cosines(m))) << m;
}

TEST(Psi, DegreeLeadAndIntegrality)
{
    for (long m = 2; m <= 100; ++m) {
        const PsiPolynomial& p = psi(m);
        EXPECT_EQ(p.degree, oracle::totient_by_gcd(m));
        EXPECT_EQ(p.poly.lead(), rational_pow(Rational(2), static_cast<unsigned long>(p.degree)));
        EXPECT_TRUE(is_integral_in_2u(p.poly)) << m;
    }
}

TEST(Psi, ChebyshevIsTheProductOverDivisors)
{
    for (long n = 2; n <= 60; ++n) {
        Poly prod = P("1");
        for (long m : divisors_of(n))
            if (m > 1)
                prod *= psi(m).poly;
        EXPECT_EQ(prod, chebyshev_u(n - 1)) << n;
    }
}

TEST(Psi, AgreesWithRealCyclotomicConstruction)
{
    for (long m = 2; m <= 100; ++m)
        EXPECT_EQ(psi(m).poly, psi_via_real_cyclotomic(m)) << m;
}

TEST(Psi, SingleRealCyclotomicFactorOnlyForEvenIndex)
{
    // C_{2m}(2u) has degree phi(2m)/2: equal to phi(m) for even m, phi(m)/2 for odd m.
    for (long m = 2; m <= 100; ++m) {
        const Poly single = substitute_2u(real_cyclotomic(2 * m).poly);
        if (m % 2 == 0)
            EXPECT_EQ(single, psi(m).poly) << m;
        else
            EXPECT_EQ(2 * single.degree(), psi(m).degree) << m;
    }
}

TEST(Psi, PairwiseCoprime)
{
    for (long m = 2; m <= 40; ++m)
        for (long k = m + 1; k <= 40; ++k)
            EXPECT_EQ(gcd(psi(m).poly, psi(k).poly), P("1")) << m << "," << k;
}

TEST(Psi, SplittingOverTheRationals)
{
    for (long m = 2; m <= 60; ++m) {
        FactoredPoly f = factor_rationals(psi(m).poly);
        if (m % 2 == 0) {
            ASSERT_EQ(f.factors.size(), 1u) << m;
        } else {
            ASSERT_EQ(f.factors.size(), 2u) << m;
            for (const auto& [g, e] : f.factors) {
                EXPECT_EQ(g.degree(), totient(m) / 2);
                EXPECT_EQ(e, 1);
            }
        }
    }
}

TEST(RealCyclotomic, Examples)
{
    EXPECT_EQ(cyclotomic(8), P("x^4 + 1"));
    EXPECT_EQ(real_cyclotomic(8).poly, P("y^2 - 2"));
    EXPECT_EQ(real_cyclotomic(5).poly, P("y^2 + y - 1"));
    EXPECT_EQ(real_cyclotomic(3).poly, P("y + 1"));
    EXPECT_EQ(real_cyclotomic(9).poly, P("y^3 - 3y + 1"));
    EXPECT_THROW(real_cyclotomic(2), std::invalid_argument);
}

TEST(RealCyclotomic, RootIsTwiceTheCosine)
{
    for (long k = 3; k <= 40; ++k) {
        const Poly C = real_cyclotomic(k).poly;
        EXPECT_EQ(C.degree(), totient(k) / 2);
        EXPECT_EQ(C.lead(), 1);
        // Evaluate in long double by Horner.
        long double x = 2.0L * std::cos(2.0L * 3.14159265358979323846264338327950288L / k), acc = 0;
        for (std::size_t i = C.coefficients().size(); i-- > 0;)
            acc = acc * x + C.coefficients()[i].get_d();
        EXPECT_NEAR(static_cast<double>(acc), 0.0, 1e-6) << k;
        EXPECT_EQ(factor_rationals(C).factors.size(), 1u) << k;
    }
}

TEST(PsiStar, Examples)
{
    EXPECT_EQ(psi_star(3), P("2u + 1"));
    EXPECT_EQ(psi_star(5), P("4u^2 + 2u - 1"));
    EXPECT_EQ(psi_star(9), P("8u^3 - 6u + 1"));
    EXPECT_THROW(psi_star(4), std::invalid_argument);
    EXPECT_THROW(psi_star(1), std::invalid_argument);
}

TEST(PsiStar, ReflectionIdentityAndNormalization)
{
    for (long m = 3; m <= 61; m += 2) {
        const Poly s = psi_star(m);
        EXPECT_EQ(s.degree(), totient(m) / 2);
        EXPECT_EQ(s.lead(), rational_pow(Rational(2), static_cast<unsigned long>(totient(m) / 2)));
    }
}
