#pragma once

/**
 * @file reproots.hpp
 * @brief Repeated roots of the new parts v_n^new: the finite search driven by
 *        the roots of u', degree admissibility of repeated roots, and the
 *        closed-form remainder w(t) for quadratic repeated roots.
 */

#include "pellpoly/newfactors.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace pellpoly {

/// One repeated root alpha (by its minimal polynomial) of some v_n^new.
struct RepeatedRootSpec {
    Poly p_alpha; ///< monic irreducible
    long d_alpha = 0;
    int k = 0; ///< exact multiplicity of p_alpha in u'
    long n = 0; ///< 1 for repeated roots of v itself
    Poly cos_min_poly; ///< monic minimal polynomial of u(alpha)
    int certified_multiplicity = 0; ///< exact multiplicity of p_alpha in v_n^new
};

struct RepeatedRootReport {
    std::vector<RepeatedRootSpec> specs;
    /// Irreducible factors of u' whose image u(alpha) is no cos(pi r/n).
    std::vector<Poly> rejected;
    long degree_sum = 0; ///< sum of d_alpha over distinct p_alpha
};

/// All n >= 2 with phi(2n)/2 <= d.
inline std::vector<long> admissible_n(long d)
{
    if (d < 1)
        throw std::invalid_argument("admissible_n: d must be >= 1");
    std::vector<long> out;
    for (long n = 2; n <= 4 * d * d; ++n)
        if (totient(2 * n) <= 2 * d)
            out.push_back(n);
    return out;
}

/**
 * Every repeated root of every v_n^new.
 *
 * Repeated roots of v (n = 1) come from its squarefree decomposition; if
 * p^e || v with e >= 2 then p^{2e-1} | u'. For n >= 2 a repeated root alpha is
 * a root of u' with u(alpha) = cos(pi r/n): each irreducible p with p^k || u'
 * is matched by the minimal polynomial of u(alpha) against psi_n, and
 * p^{k+1} || v_n^new is verified by exact division.
 */
inline RepeatedRootReport repeated_roots_report(const PellInstance& inst)
{
    const Poly& u = inst.u();
    if (u.is_constant())
        throw std::logic_error("repeated_roots_report: u is constant");
    RepeatedRootReport report;
    const Poly du = u.derivative();

    if (!inst.v().is_constant()) {
        for (const auto& [g, e] : squarefree_decompose(inst.v()).factors) {
            if (e < 2)
                continue;
            for (const auto& [p, one] : factor_rationals(g).factors) {
                const int k = du.is_constant() ? 0 : multiplicity(p, du);
                if (k < 2 * e - 1)
                    throw std::logic_error("repeated root of v: p^(2e-1) does not divide u'");
                report.specs.push_back({p, p.degree(), k, 1, min_poly_of_image(p, u), e});
            }
        }
    }

    if (!du.is_constant()) {
        for (const auto& [g, k] : squarefree_decompose(du).factors) {
            for (const auto& [p, one] : factor_rationals(g).factors) {
                const Poly image = min_poly_of_image(p, u);
                bool matched = false;
                for (long n : admissible_n(image.degree())) {
                    if (!divides(image, psi(n).poly))
                        continue;
                    const int mult = multiplicity(p, v_new_poly(inst, n));
                    if (mult != k + 1)
                        throw std::logic_error("repeated root: multiplicity in v_n^new is not k + 1");
                    report.specs.push_back({p, p.degree(), k, n, image, mult});
                    matched = true;
                    break;
                }
                if (!matched)
                    report.rejected.push_back(p);
            }
        }
    }

    std::sort(report.specs.begin(), report.specs.end(), [](const auto& a, const auto& b) {
        if (a.n != b.n)
            return a.n < b.n;
        return canonical_less(a.p_alpha, b.p_alpha);
    });
    std::sort(report.rejected.begin(), report.rejected.end(), canonical_less);

    std::set<Poly, detail::PolyLess> distinct;
    for (const auto& s : report.specs)
        if (distinct.insert(s.p_alpha).second)
            report.degree_sum += s.d_alpha;
    if (report.degree_sum > u.degree() - 1)
        throw std::logic_error("repeated roots exceed deg u - 1");
    return report;
}

// ---------------------------------------------------------------------------
// Degree admissibility
// ---------------------------------------------------------------------------

struct OddDegreeVerdict {
    long d_alpha = 0;
    bool degree_is_prime = false;
    /// Indices n > 3 at which a repeated root of degree d_alpha may occur.
    std::vector<long> allowed_n;
};

namespace detail {

/// (q, s) when n = q^s for a prime q, otherwise empty.
inline std::optional<std::pair<long, int>> prime_power(long n)
{
    if (n < 2)
        return std::nullopt;
    auto f = factor_small(static_cast<std::uint64_t>(n));
    if (f.size() != 1)
        return std::nullopt;
    return std::make_pair(static_cast<long>(f[0].first), f[0].second);
}

} // namespace detail

/// Indices n > 3 admitting a repeated root of odd degree d_alpha: the prime
/// powers q^s, q = 3 mod 4, with (q-1) q^{s-1} / 2 dividing d_alpha.
inline OddDegreeVerdict odd_degree_admissibility(long d_alpha)
{
    if (d_alpha <= 1 || d_alpha % 2 == 0)
        throw std::invalid_argument("odd_degree_admissibility: d_alpha must be odd and > 1");
    OddDegreeVerdict out;
    out.d_alpha = d_alpha;
    out.degree_is_prime = is_prime(static_cast<std::uint64_t>(d_alpha));
    // (q-1) q^{s-1} / 2 <= d_alpha forces q^s <= 3 d_alpha.
    for (long n = 4; n <= 3 * d_alpha; ++n) {
        auto pp = detail::prime_power(n);
        if (!pp || pp->first % 4 != 3)
            continue;
        long half = (pp->first - 1) / 2;
        for (int i = 1; i < pp->second; ++i)
            half *= pp->first;
        if (d_alpha % half == 0)
            out.allowed_n.push_back(n);
    }
    return out;
}

struct TotientParity {
    bool is_phi_half_odd = false;
    /// p when phi(m)/2 is the prime p.
    std::optional<long> prime_value;
};

/// For odd m > 3, from the factorization of m alone: phi(m)/2 is odd iff m is
/// a power of a prime q = 3 mod 4, and phi(m)/2 is a prime p iff m = 2p + 1 is
/// prime or (m, p) = (9, 3).
inline TotientParity totient_parity_lemmas(long m)
{
    if (m <= 3 || m % 2 == 0)
        throw std::invalid_argument("totient_parity_lemmas: m must be odd and > 3");
    TotientParity out;
    auto pp = detail::prime_power(m);
    out.is_phi_half_odd = pp && pp->first % 4 == 3;
    if (m == 9)
        out.prime_value = 3;
    else if (pp && pp->second == 1 && is_prime(static_cast<std::uint64_t>((m - 1) / 2)))
        out.prime_value = (m - 1) / 2;
    return out;
}

/// The real quadratic field Q(cos(pi/n)) = Q(sqrt(l)) for n in {4, 5, 6}.
inline std::uint64_t quadratic_field_for_n(long n)
{
    switch (n) {
    case 4:
        return 2;
    case 5:
        return 5;
    case 6:
        return 3;
    default:
        throw std::invalid_argument("quadratic_field_for_n: n must be 4, 5 or 6");
    }
}

// ---------------------------------------------------------------------------
// Quadratic repeated roots
// ---------------------------------------------------------------------------

/// a_k = (2k-1)! g / ((-4l)^{k-1} s^{2k-1} ((k-1)!)^2).
inline Rational a_k_coefficient(long k, std::uint64_t l, const Rational& s, const Rational& g)
{
    if (k < 2)
        throw std::invalid_argument("a_k_coefficient: k must be > 1");
    if (s == 0)
        throw std::invalid_argument("a_k_coefficient: s must be nonzero");
    if (l != 2 && l != 3 && l != 5)
        throw std::invalid_argument("a_k_coefficient: l must be 2, 3 or 5");
    const auto km1 = static_cast<unsigned long>(k - 1);
    const Integer fk = factorial(km1);
    Rational den = rational_pow(Rational(-4 * static_cast<long>(l)), km1) *
                   rational_pow(s, static_cast<unsigned long>(2 * k - 1)) * Rational(fk * fk);
    return Rational(factorial(static_cast<unsigned long>(2 * k - 1))) * g / den;
}

struct QuadraticReconstruction {
    std::uint64_t l = 0;
    Rational s; ///< A = s^2 l, s > 0
    Rational b, c; ///< p_alpha = t^2 + 2bt + c
    Rational A;
    Rational g, h; ///< cos(pi r/n) = h + g sqrt(l)
    Rational a_k;
    QuadNum alpha{0, 1, 2}; ///< -b + s sqrt(l)
    Poly w;
};

/// w(t) = a_k (P(t) - P(alpha)) + cos(pi r/n), where P' = p_alpha^{k-1}: the
/// remainder of u modulo p_alpha^k when alpha is a k-fold root of u - cos.
inline QuadraticReconstruction reconstruct_w(const Poly& p_alpha, long k, long n, const QuadNum& cos_value)
{
    if (p_alpha.degree() != 2 || p_alpha.lead() != 1)
        throw std::invalid_argument("reconstruct_w: p_alpha must be a monic quadratic");
    if (k < 2)
        throw std::invalid_argument("reconstruct_w: k must be >= 2");
    QuadraticReconstruction r;
    r.l = quadratic_field_for_n(n);
    if (cos_value.radicand() != r.l)
        throw std::invalid_argument("reconstruct_w: cosine not in Q(sqrt(l)) for this n");
    r.b = p_alpha.coeff(1) / 2;
    r.c = p_alpha.coeff(0);
    r.A = r.b * r.b - r.c;
    auto s = rational_sqrt(r.A / Rational(r.l));
    if (!s || *s == 0)
        throw std::invalid_argument("reconstruct_w: splitting field of p_alpha is not Q(sqrt(l))");
    r.s = *s;
    r.g = cos_value.b();
    r.h = cos_value.a();
    r.alpha = QuadNum(-r.b, r.s, r.l);
    r.a_k = a_k_coefficient(k, r.l, r.s, r.g);

    const Poly integrand = pow(p_alpha, static_cast<unsigned long>(k - 1)) * r.a_k;
    const Poly primitive = integrand.antiderivative();
    const QuadNum offset = cos_value - primitive.eval(r.alpha);
    if (!offset.is_rational())
        throw std::logic_error("reconstruct_w: sqrt(l) terms do not cancel");
    r.w = primitive + Poly::constant(offset.a());

    if (r.w.derivative() != integrand)
        throw std::logic_error("reconstruct_w: w' != a_k p_alpha^(k-1)");
    if (!(r.w.eval(r.alpha) == cos_value))
        throw std::logic_error("reconstruct_w: w(alpha) != cos");
    Poly dj = r.w;
    const QuadNum zero(0, 0, r.l);
    for (long j = 1; j < k; ++j) {
        dj = dj.derivative();
        if (!(dj.eval(r.alpha) == zero))
            throw std::logic_error("reconstruct_w: (t - alpha)^k does not divide w - cos");
    }
    return r;
}

/// sum_{j=0}^{n} binom(n, j) (-1)^{n-j} / (2j+1).
inline Rational combinatorial_f(long n)
{
    if (n < 0)
        throw std::invalid_argument("combinatorial_f: n must be >= 0");
    Rational sum = 0;
    for (long j = 0; j <= n; ++j) {
        Rational term(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)), Integer(2 * j + 1));
        term.canonicalize();
        if ((n - j) % 2 != 0)
            term = -term;
        sum += term;
    }
    return sum;
}

/// (-4)^n (n!)^2 / (2n+1)!.
inline Rational combinatorial_closed_form(long n)
{
    if (n < 0)
        throw std::invalid_argument("combinatorial_closed_form: n must be >= 0");
    const auto un = static_cast<unsigned long>(n);
    const Integer f = factorial(un);
    return rational_pow(Rational(-4), un) * Rational(f * f) / Rational(factorial(2 * un + 1));
}

/// True when (2k-1)! / (4^{k-1} ((k-1)!)^2) has negative 2-adic valuation, so
/// a_k cannot be an integer.
inline bool integer_obstruction(long k)
{
    if (k < 2)
        throw std::invalid_argument("integer_obstruction: k must be > 1");
    const auto km1 = static_cast<unsigned long>(k - 1);
    const Integer f = factorial(km1);
    Rational q = Rational(factorial(2 * km1 + 1)) / Rational(rational_pow(Rational(4), km1) * Rational(f * f));
    return valuation2(q) < 0;
}

/// D = u^2 - 1 with u = p^k (n = 2) or u = p^k - 1/2 (n = 3), so that p^k
/// divides v_2^new = 2u resp. the factor 2u + 1 of v_3^new.
inline PellInstance construct_small_n_example(const Poly& p, long k, long n)
{
    if (p.is_constant())
        throw std::invalid_argument("construct_small_n_example: p must be nonconstant");
    if (k < 1)
        throw std::invalid_argument("construct_small_n_example: k must be >= 1");
    if (n != 2 && n != 3)
        throw std::invalid_argument("construct_small_n_example: n must be 2 or 3");
    const Poly pk = pow(p, static_cast<unsigned long>(k));
    const Poly u = n == 2 ? pk : pk - Poly::constant(make_rational(1, 2));
    PellInstance inst = PellInstance::from_u(u);
    if (!divides(pk, v_new_poly(inst, n)))
        throw std::logic_error("construct_small_n_example: p^k does not divide v_n^new");
    return inst;
}

} // namespace pellpoly
