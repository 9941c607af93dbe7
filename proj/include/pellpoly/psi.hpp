#pragma once

/**
 * @file psi.hpp
 * @brief The polynomials psi_m(u) whose compositions with u(t) are the new
 *        parts of v_n, their odd-index halves psi*_m, Chebyshev polynomials of
 *        the second kind, and real cyclotomic polynomials C_k.
 */

#include "pellpoly/poly.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace pellpoly {

inline long totient(long n)
{
    if (n < 1)
        throw std::invalid_argument("totient: n must be >= 1");
    long phi = n;
    for (const auto& [p, e] : factor_small(static_cast<std::uint64_t>(n)))
        phi = phi / static_cast<long>(p) * (static_cast<long>(p) - 1);
    return phi;
}

inline int moebius(long n)
{
    if (n < 1)
        throw std::invalid_argument("moebius: n must be >= 1");
    int mu = 1;
    for (const auto& [p, e] : factor_small(static_cast<std::uint64_t>(n))) {
        if (e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

/// Positive divisors of n, ascending.
inline std::vector<long> divisors_of(long n)
{
    std::vector<long> lo, hi;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        lo.push_back(d);
        if (d != n / d)
            hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

/// U_n(u): U_0 = 1, U_1 = 2u, U_n = 2u U_{n-1} - U_{n-2}.
inline Poly chebyshev_u(long n)
{
    if (n < 0)
        throw std::invalid_argument("chebyshev_u: n must be >= 0");
    const Poly two_u = Poly::monomial(2, 1);
    Poly prev = Poly::constant(1), cur = two_u;
    if (n == 0)
        return prev;
    for (long i = 1; i < n; ++i) {
        Poly next = two_u * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Coefficients of f in the basis (2u)^i: entry i is coeff_i / 2^i.
inline std::vector<Rational> coefficients_in_2u(const Poly& f)
{
    std::vector<Rational> out;
    Rational scale = 1;
    for (const auto& c : f.coefficients()) {
        out.push_back(c / scale);
        scale *= 2;
    }
    return out;
}

inline bool is_integral_in_2u(const Poly& f)
{
    for (const auto& c : coefficients_in_2u(f))
        if (c.get_den() != 1)
            return false;
    return true;
}

struct PsiPolynomial {
    long m = 0;
    Poly poly;
    long degree = 0;
};

namespace detail {

struct PsiTable {
    std::mutex mu;
    std::map<long, PsiPolynomial> psi;
    std::map<long, Poly> cyclotomic;
};

inline PsiTable& psi_table()
{
    static PsiTable table;
    return table;
}

inline const PsiPolynomial& psi_locked(PsiTable& tab, long m)
{
    if (auto it = tab.psi.find(m); it != tab.psi.end())
        return it->second;
    Poly q = chebyshev_u(m - 1);
    for (long d : divisors_of(m))
        if (d > 1 && d < m)
            q = exact_div(q, psi_locked(tab, d).poly);
    if (q.degree() != totient(m))
        throw std::logic_error("psi: degree differs from phi(m)");
    long deg = q.degree();
    return tab.psi.emplace(m, PsiPolynomial{m, std::move(q), deg}).first->second;
}

inline const Poly& cyclotomic_locked(PsiTable& tab, long k)
{
    if (auto it = tab.cyclotomic.find(k); it != tab.cyclotomic.end())
        return it->second;
    Poly q = Poly::monomial(1, static_cast<std::size_t>(k)) - Poly::constant(1);
    for (long d : divisors_of(k))
        if (d < k)
            q = exact_div(q, cyclotomic_locked(tab, d));
    return tab.cyclotomic.emplace(k, std::move(q)).first->second;
}

} // namespace detail

/// psi_m = U_{m-1} / prod_{d | m, 1 < d < m} psi_d, memoized. The returned
/// reference stays valid for the lifetime of the program.
inline const PsiPolynomial& psi(long m)
{
    if (m < 2)
        throw std::invalid_argument("psi: m must be >= 2");
    auto& tab = detail::psi_table();
    std::lock_guard lock(tab.mu);
    return detail::psi_locked(tab, m);
}

/// Phi_k(x), by iterated exact division of x^k - 1.
inline Poly cyclotomic(long k)
{
    if (k < 1)
        throw std::invalid_argument("cyclotomic: k must be >= 1");
    auto& tab = detail::psi_table();
    std::lock_guard lock(tab.mu);
    return detail::cyclotomic_locked(tab, k);
}

struct RealCyclotomic {
    long k = 0;
    Poly poly;
};

/// C_k(y), the minimal polynomial of 2cos(2pi/k), from
/// Phi_k(x) = x^{phi(k)/2} C_k(x + 1/x).
inline RealCyclotomic real_cyclotomic(long k)
{
    if (k < 3)
        throw std::invalid_argument("real_cyclotomic: k must be >= 3");
    const Poly phi = cyclotomic(k);
    const long h = phi.degree() / 2;
    // sym[j] is the coefficient of x^j + x^{-j} (sym[0] of 1) in Phi_k / x^h.
    std::vector<Integer> sym(static_cast<std::size_t>(h) + 1);
    for (long j = 0; j <= h; ++j) {
        const Rational& c = phi.coefficients()[static_cast<std::size_t>(h + j)];
        if (c.get_den() != 1 || c != phi.coefficients()[static_cast<std::size_t>(h - j)])
            throw std::logic_error("real_cyclotomic: Phi_k not palindromic over Z");
        sym[static_cast<std::size_t>(j)] = c.get_num();
    }
    std::vector<Rational> out(static_cast<std::size_t>(h) + 1);
    for (long e = h; e >= 0; --e) {
        const Integer c = sym[static_cast<std::size_t>(e)];
        out[static_cast<std::size_t>(e)] = c;
        // (x + 1/x)^e = sum_i binom(e, i) x^{e - 2i}
        for (long i = 0; 2 * i <= e; ++i) {
            const long j = e - 2 * i;
            Integer b = binomial(static_cast<unsigned long>(e), static_cast<unsigned long>(i));
            sym[static_cast<std::size_t>(j)] -= c * b;
        }
    }
    for (const auto& r : sym)
        if (r != 0)
            throw std::logic_error("real_cyclotomic: change of variable left a remainder");
    return {k, Poly(std::move(out))};
}

/// f(2u) for f in the variable y.
inline Poly substitute_2u(const Poly& f)
{
    return compose(f, Poly::monomial(2, 1));
}

/// psi*_m(u) = C_m(2u) for odd m >= 3, leading coefficient 2^{phi(m)/2}, after
/// checking psi_m(u) = (-1)^{phi(m)/2} psi*_m(u) psi*_m(-u).
inline Poly psi_star(long m)
{
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("psi_star: m must be odd and >= 3");
    Poly star = substitute_2u(real_cyclotomic(m).poly);
    Poly reflected = compose(star, Poly::monomial(-1, 1));
    Poly prod = star * reflected;
    if ((totient(m) / 2) % 2 != 0)
        prod = -prod;
    if (prod != psi(m).poly)
        throw std::logic_error("psi_star: psi_m != (-1)^{phi(m)/2} psi*_m(u) psi*_m(-u)");
    return star;
}

/// psi_m rebuilt from real cyclotomic polynomials: the roots 2cos(pi r/m) with
/// r odd are the conjugates of 2cos(2pi/2m), those with r even the conjugates
/// of 2cos(2pi/m). Hence C_{2m}(2u) for even m and C_m(2u) C_{2m}(2u) for odd m.
inline Poly psi_via_real_cyclotomic(long m)
{
    if (m < 2)
        throw std::invalid_argument("psi_via_real_cyclotomic: m must be >= 2");
    Poly out = substitute_2u(real_cyclotomic(2 * m).poly);
    if (m % 2 != 0 && m >= 3)
        out *= substitute_2u(real_cyclotomic(m).poly);
    return out;
}

} // namespace pellpoly
