#include "pellpoly/reproots.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pellpoly;

namespace {

Poly P(const char* s)
{
    return parse_poly(s);
}

bool is_prime_by_trial(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST(RepeatedRoots, SquaredQuadraticAtIndexTwo)
{
    const PellInstance inst = PellInstance::from_u(P("t^4 - 4t^2 + 4"));
    const RepeatedRootReport r = repeated_roots_report(inst);
    ASSERT_EQ(r.specs.size(), 1u);
    const RepeatedRootSpec& s = r.specs[0];
    EXPECT_EQ(s.p_alpha, P("t^2 - 2"));
    EXPECT_EQ(s.d_alpha, 2);
    EXPECT_EQ(s.k, 1);
    EXPECT_EQ(s.n, 2);
    EXPECT_EQ(s.cos_min_poly, P("x"));
    EXPECT_EQ(s.certified_multiplicity, 2);
    EXPECT_EQ(r.rejected, std::vector<Poly>{P("t")});
    EXPECT_EQ(r.degree_sum, 2);
    EXPECT_LE(r.degree_sum, inst.u().degree() - 1);
}

TEST(RepeatedRoots, Examples)
{
    const RepeatedRootReport lin = repeated_roots_report(PellInstance::from_u(P("t")));
    EXPECT_TRUE(lin.specs.empty());
    EXPECT_TRUE(lin.rejected.empty());

    const RepeatedRootReport cube = repeated_roots_report(PellInstance::from_u(pow(P("t - 5"), 3)));
    ASSERT_EQ(cube.specs.size(), 1u);
    EXPECT_EQ(cube.specs[0].p_alpha, P("t - 5"));
    EXPECT_EQ(cube.specs[0].k, 2);
    EXPECT_EQ(cube.specs[0].n, 2);
    EXPECT_EQ(cube.specs[0].certified_multiplicity, 3);
}

TEST(RepeatedRoots, RepeatedFactorOfV)
{
    // (u_2, v_2) for u = (t^2 - 2)^2 has v = 2 (t^2 - 2)^2.
    const PellInstance base = PellInstance::from_u(P("t^4 - 4t^2 + 4"));
    const SolutionIndex s2 = generate(base, 2);
    const PellInstance inst(base.D(), s2.u_n, s2.v_n);
    const RepeatedRootReport r = repeated_roots_report(inst);
    ASSERT_EQ(r.specs.size(), 1u);
    EXPECT_EQ(r.specs[0].n, 1);
    EXPECT_EQ(r.specs[0].p_alpha, P("t^2 - 2"));
    EXPECT_EQ(r.specs[0].certified_multiplicity, 2);
    EXPECT_EQ(r.specs[0].k, 3);
    EXPECT_EQ(r.specs[0].cos_min_poly, P("x + 1"));
    EXPECT_LE(r.degree_sum, inst.u().degree() - 1);
}

TEST(RepeatedRoots, SmallIndexConstructions)
{
    const PellInstance a = construct_small_n_example(P("t^2 - 2"), 2, 2);
    EXPECT_EQ(a.u(), P("t^4 - 4t^2 + 4"));
    EXPECT_EQ(v_new_poly(a, 2), P("2t^4 - 8t^2 + 8"));

    const PellInstance b = construct_small_n_example(P("t - 5"), 3, 2);
    EXPECT_EQ(multiplicity(P("t - 5"), v_new_poly(b, 2)), 3);

    const PellInstance c = construct_small_n_example(P("t^2 + t + 1"), 2, 3);
    EXPECT_EQ(c.u(), pow(P("t^2 + t + 1"), 2) - Poly::constant(make_rational(1, 2)));
    const RepeatedRootReport r = repeated_roots_report(c);
    bool found = false;
    for (const auto& s : r.specs)
        if (s.p_alpha == P("t^2 + t + 1")) {
            EXPECT_EQ(s.n, 3);
            EXPECT_EQ(s.certified_multiplicity, 2);
            found = true;
        }
    EXPECT_TRUE(found);

    EXPECT_THROW(construct_small_n_example(P("3"), 1, 2), std::invalid_argument);
    EXPECT_THROW(construct_small_n_example(P("t"), 1, 4), std::invalid_argument);
}

TEST(RepeatedRoots, CertifiedMultiplicityIsExact)
{
    gen::Source src(61);
    for (int i = 0; i < 12; ++i) {
        const Poly p = src.monic_int_poly(src.integer(1, 2), 4);
        const long k = src.integer(1, 3);
        const long n = src.integer(2, 3);
        if (factor_rationals(p).factors.size() != 1 || factor_rationals(p).factors[0].second != 1)
            continue;
        const PellInstance inst = construct_small_n_example(p, k, n);
        for (const auto& s : repeated_roots_report(inst).specs) {
            if (s.n == 1)
                continue;
            const Poly vn = v_new_poly(inst, s.n);
            const Poly pk1 = pow(s.p_alpha, static_cast<unsigned long>(s.certified_multiplicity));
            EXPECT_TRUE(divides(pk1, vn));
            EXPECT_FALSE(divides(pk1 * s.p_alpha, vn));
            EXPECT_EQ(multiplicity(s.p_alpha, inst.u().derivative()), s.k);
            EXPECT_EQ(s.certified_multiplicity, s.k + 1);
            EXPECT_TRUE(divides(s.cos_min_poly, psi(s.n).poly));
        }
    }
}

TEST(RepeatedRoots, NoQuadraticRepeatedRootsBeyondIndexThreeForIntegerU)
{
    gen::Source src(62);
    for (int i = 0; i < 20; ++i) {
        const Poly u = src.int_poly(src.integer(1, 8), 6);
        const RepeatedRootReport r = repeated_roots_report(PellInstance::from_u(u));
        EXPECT_LE(r.degree_sum, u.degree() - 1);
        for (const auto& s : r.specs)
            EXPECT_FALSE(s.d_alpha == 2 && s.n > 3) << u;
    }
}

TEST(RepeatedRoots, QuadraticRootBuiltFromTheRemainderFormula)
{
    // u = p^2 + w with w' = a_2 p: alpha = sqrt 2 is a root of u' and u(alpha) = cos(pi/4).
    const QuadraticReconstruction rec = reconstruct_w(P("t^2 - 2"), 2, 4, QuadNum(0, make_rational(1, 2), 2));
    const PellInstance inst = PellInstance::from_u(pow(P("t^2 - 2"), 2) + rec.w);
    const RepeatedRootReport r = repeated_roots_report(inst);
    bool found = false;
    for (const auto& s : r.specs)
        if (s.p_alpha == P("t^2 - 2")) {
            EXPECT_EQ(s.n, 4);
            EXPECT_EQ(s.certified_multiplicity, 2);
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_TRUE(divides(pow(P("t^2 - 2"), 2), v_new_poly(inst, 4)));
}

TEST(AdmissibleN, Examples)
{
    EXPECT_EQ(admissible_n(1), (std::vector<long>{2, 3}));
    EXPECT_EQ(admissible_n(2), (std::vector<long>{2, 3, 4, 5, 6}));
    EXPECT_THROW(admissible_n(0), std::invalid_argument);
}

TEST(OddDegree, Examples)
{
    EXPECT_EQ(odd_degree_admissibility(3).allowed_n, (std::vector<long>{7, 9}));
    EXPECT_TRUE(odd_degree_admissibility(7).allowed_n.empty());
    EXPECT_EQ(odd_degree_admissibility(5).allowed_n, std::vector<long>{11});
    for (long d : {13L, 17L, 19L})
        EXPECT_TRUE(odd_degree_admissibility(d).allowed_n.empty()) << d;
    EXPECT_THROW(odd_degree_admissibility(4), std::invalid_argument);
    EXPECT_THROW(odd_degree_admissibility(1), std::invalid_argument);
}

TEST(OddDegree, MatchesBruteForce)
{
    for (long d = 3; d <= 21; d += 2) {
        std::vector<long> want;
        for (long n = 4; n <= 8 * d * d; ++n) {
            if (n % 2 == 0)
                continue;
            const long half = oracle::totient_by_gcd(n) / 2;
            if (half % 2 == 1 && d % half == 0)
                want.push_back(n);
        }
        const OddDegreeVerdict v = odd_degree_admissibility(d);
        EXPECT_EQ(v.allowed_n, want) << d;
        if (v.degree_is_prime) {
            std::vector<long> sg;
            if (d == 3)
                sg = {7, 9};
            else if (is_prime_by_trial(2 * d + 1))
                sg = {2 * d + 1};
            EXPECT_EQ(v.allowed_n, sg) << d;
        }
    }
}

TEST(TotientParity, Examples)
{
    TotientParity a = totient_parity_lemmas(7);
    EXPECT_TRUE(a.is_phi_half_odd);
    EXPECT_EQ(a.prime_value, 3);
    TotientParity b = totient_parity_lemmas(9);
    EXPECT_TRUE(b.is_phi_half_odd);
    EXPECT_EQ(b.prime_value, 3);
    TotientParity c = totient_parity_lemmas(15);
    EXPECT_FALSE(c.is_phi_half_odd);
    EXPECT_FALSE(c.prime_value);
    EXPECT_THROW(totient_parity_lemmas(8), std::invalid_argument);
    EXPECT_THROW(totient_parity_lemmas(3), std::invalid_argument);
}

TEST(TotientParity, MatchesDirectTotient)
{
    for (long m = 5; m <= 401; m += 2) {
        const long half = oracle::totient_by_gcd(m) / 2;
        const TotientParity t = totient_parity_lemmas(m);
        EXPECT_EQ(t.is_phi_half_odd, half % 2 == 1) << m;
        EXPECT_EQ(t.prime_value.has_value(), is_prime_by_trial(half)) << m;
        if (t.prime_value) {
            EXPECT_EQ(*t.prime_value, half) << m;
        }
    }
}

TEST(QuadraticField, Examples)
{
    EXPECT_EQ(quadratic_field_for_n(4), 2u);
    EXPECT_EQ(quadratic_field_for_n(5), 5u);
    EXPECT_EQ(quadratic_field_for_n(6), 3u);
    EXPECT_THROW(quadratic_field_for_n(7), std::invalid_argument);
}

TEST(QuadraticReconstruction, Examples)
{
    EXPECT_EQ(a_k_coefficient(2, 2, 1, make_rational(1, 2)), make_rational(-3, 8));
    EXPECT_EQ(a_k_coefficient(2, 3, 1, make_rational(1, 2)), make_rational(-1, 4));
    EXPECT_THROW(a_k_coefficient(2, 2, 0, 1), std::invalid_argument);
    EXPECT_THROW(a_k_coefficient(1, 2, 1, 1), std::invalid_argument);

    const QuadraticReconstruction r = reconstruct_w(P("t^2 - 2"), 2, 4, QuadNum(0, make_rational(1, 2), 2));
    EXPECT_EQ(r.l, 2u);
    EXPECT_EQ(r.s, 1);
    EXPECT_EQ(r.A, 2);
    EXPECT_EQ(r.a_k, make_rational(-3, 8));
    EXPECT_EQ(r.w, P("-1/8 t^3 + 3/4 t"));

    const QuadraticReconstruction r3 = reconstruct_w(P("t^2 - 3"), 2, 6, QuadNum(0, make_rational(1, 2), 3));
    EXPECT_EQ(r3.a_k, make_rational(-1, 4));
    EXPECT_EQ(r3.w, P("-1/12 t^3 + 3/4 t"));

    EXPECT_THROW(reconstruct_w(P("t^2 - 2"), 2, 6, QuadNum(0, make_rational(1, 2), 2)), std::invalid_argument);
}

TEST(QuadraticReconstruction, ClosedFormAgreesWithIntegral)
{
    // The closed-form a_k is the only scalar making the integral land on a
    // rational polynomial; check across fields, shifts, scales and orders.
    const std::pair<long, QuadNum> cosines[] = {
        {4, QuadNum(0, make_rational(1, 2), 2)},
        {4, QuadNum(0, make_rational(-1, 2), 2)},
        {6, QuadNum(0, make_rational(1, 2), 3)},
        {5, QuadNum(make_rational(1, 4), make_rational(1, 4), 5)},
        {5, QuadNum(make_rational(-1, 4), make_rational(1, 4), 5)},
    };
    for (const auto& [n, cv] : cosines) {
        const std::uint64_t l = quadratic_field_for_n(n);
        for (long b : {0L, 1L, -2L})
            for (long s : {1L, 2L})
                for (long k = 2; k <= 5; ++k) {
                    // p = (t + b)^2 - s^2 l
                    const Poly p = P("t^2") + Poly::monomial(2 * b, 1) + Poly::constant(b * b - s * s * static_cast<long>(l));
                    const QuadraticReconstruction r = reconstruct_w(p, k, n, cv);
                    EXPECT_EQ(r.w.derivative(), Poly::constant(r.a_k) * pow(p, static_cast<unsigned long>(k - 1)));
                    EXPECT_EQ(r.w.eval(r.alpha), cv);
                }
    }
}

TEST(Combinatorial, Examples)
{
    EXPECT_EQ(combinatorial_f(0), 1);
    EXPECT_EQ(combinatorial_f(1), make_rational(-2, 3));
    EXPECT_EQ(combinatorial_f(3), make_rational(-16, 35));
    EXPECT_EQ(combinatorial_closed_form(3), make_rational(-16, 35));
}

TEST(Combinatorial, SumEqualsClosedForm)
{
    for (long n = 0; n <= 50; ++n)
        EXPECT_EQ(combinatorial_f(n), combinatorial_closed_form(n)) << n;
}

TEST(IntegerObstruction, HoldsForAllTestedOrders)
{
    for (long k = 2; k <= 200; ++k)
        EXPECT_TRUE(integer_obstruction(k)) << k;
    EXPECT_THROW(integer_obstruction(1), std::invalid_argument);
}
