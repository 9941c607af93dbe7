#pragma once

/**
 * @file factor.hpp
 * @brief Factorization in Q[t]: Yun split, then per squarefree part a
 *        Zassenhaus pipeline (prime selection, distinct/equal-degree
 *        factorization mod p, multifactor Hensel lifting, subset recombination
 *        with trial division).
 *
 * Recombination is brute force over subsets. The worst case is exponential in
 * the number of modular factors; at the degrees this library meets (<= ~80)
 * the prime retry policy keeps that number small.
 */

#include "pellpoly/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pellpoly {

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^31
// ---------------------------------------------------------------------------

namespace modp {

using MPoly = std::vector<std::uint64_t>;

struct Field {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const
    {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1u)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1u;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const
    {
        if (a % p == 0)
            throw std::domain_error("inverse of zero mod p");
        return pow(a, p - 2);
    }
    std::uint64_t reduce(const Integer& z) const
    {
        return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
    }
};

inline void trim(MPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline long degree(const MPoly& f) { return static_cast<long>(f.size()) - 1; }

inline MPoly reduce(const Field& F, const ZPoly& f)
{
    MPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] = F.reduce(f[i]);
    trim(r);
    return r;
}

inline MPoly mul(const Field& F, const MPoly& a, const MPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    MPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
    }
    trim(r);
    return r;
}

inline MPoly sub(const Field& F, MPoly a, const MPoly& b)
{
    if (b.size() > a.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

inline std::pair<MPoly, MPoly> divmod(const Field& F, MPoly a, const MPoly& b)
{
    if (b.empty())
        throw std::domain_error("division by zero polynomial mod p");
    if (a.size() < b.size())
        return {MPoly{}, a};
    const std::size_t db = b.size() - 1;
    const std::uint64_t il = F.inv(b.back());
    MPoly q(a.size() - db, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        std::uint64_t c = F.mul(a[k + db], il);
        q[k] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            a[k + j] = F.sub(a[k + j], F.mul(c, b[j]));
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
}

inline MPoly rem(const Field& F, const MPoly& a, const MPoly& b) { return divmod(F, a, b).second; }

inline MPoly monic(const Field& F, MPoly f)
{
    if (f.empty())
        return f;
    std::uint64_t il = F.inv(f.back());
    for (auto& c : f)
        c = F.mul(c, il);
    return f;
}

inline MPoly gcd(const Field& F, MPoly a, MPoly b)
{
    while (!b.empty()) {
        MPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, std::move(a));
}

/// (g, s, t) with s*a + t*b = g monic.
inline std::tuple<MPoly, MPoly, MPoly> ext_gcd(const Field& F, MPoly a, MPoly b)
{
    MPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
        auto [q, r] = divmod(F, a, b);
        MPoly s2 = sub(F, s0, mul(F, q, s1));
        MPoly t2 = sub(F, t0, mul(F, q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    std::uint64_t il = F.inv(a.back());
    for (auto* v : {&a, &s0, &t0})
        for (auto& c : *v)
            c = F.mul(c, il);
    return {a, s0, t0};
}

inline MPoly derivative(const Field& F, const MPoly& f)
{
    if (f.size() <= 1)
        return {};
    MPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = F.mul(f[i], i % F.p);
    trim(d);
    return d;
}

/// base^e mod m, e given as a big integer.
inline MPoly powmod(const Field& F, MPoly base, const Integer& e, const MPoly& m)
{
    MPoly r{1};
    base = rem(F, base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = rem(F, mul(F, r, r), m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = rem(F, mul(F, r, base), m);
    }
    return r;
}

/// Distinct-degree factorization of a monic squarefree f: pairs (product of all
/// irreducible factors of degree d, d).
inline std::vector<std::pair<MPoly, long>> distinct_degree(const Field& F, MPoly f)
{
    std::vector<std::pair<MPoly, long>> out;
    const MPoly x{0, 1};
    MPoly h = x;
    const Integer p(static_cast<unsigned long>(F.p));
    for (long d = 1; 2 * d <= degree(f); ++d) {
        h = powmod(F, h, p, f);
        MPoly g = gcd(F, f, sub(F, h, x));
        if (degree(g) > 0) {
            out.emplace_back(g, d);
            f = divmod(F, f, g).first;
            h = rem(F, h, f);
        }
    }
    if (degree(f) > 0)
        out.emplace_back(f, degree(f));
    return out;
}

/// Cantor-Zassenhaus split of a monic product of irreducibles of degree d.
inline void equal_degree(const Field& F, const MPoly& g, long d, std::mt19937_64& rng,
                         std::vector<MPoly>& out)
{
    if (degree(g) == d) {
        out.push_back(g);
        return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    for (;;) {
        MPoly a(static_cast<std::size_t>(degree(g)));
        for (auto& c : a)
            c = rng() % F.p;
        trim(a);
        if (degree(a) < 1)
            continue;
        MPoly b = powmod(F, a, e, g);
        b = sub(F, b, MPoly{1});
        MPoly f1 = gcd(F, g, b);
        if (degree(f1) > 0 && degree(f1) < degree(g)) {
            equal_degree(F, f1, d, rng, out);
            equal_degree(F, divmod(F, g, f1).first, d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree f mod an odd prime.
inline std::vector<MPoly> factor_squarefree(const Field& F, const MPoly& f)
{
    std::mt19937_64 rng(0x5eed + F.p);
    std::vector<MPoly> out;
    for (const auto& [g, d] : distinct_degree(F, f))
        equal_degree(F, g, d, rng, out);
    std::sort(out.begin(), out.end(), [](const MPoly& a, const MPoly& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

} // namespace modp

// ---------------------------------------------------------------------------
// Hensel lifting over Z / m
// ---------------------------------------------------------------------------

namespace hensel {

inline void reduce(ZPoly& f, const Integer& m)
{
    for (auto& c : f)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    zpoly::trim(f);
}

inline ZPoly add(ZPoly a, const ZPoly& b)
{
    if (b.size() > a.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    zpoly::trim(a);
    return a;
}

inline ZPoly sub(ZPoly a, const ZPoly& b)
{
    if (b.size() > a.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    zpoly::trim(a);
    return a;
}

inline ZPoly mulmod(const ZPoly& a, const ZPoly& b, const Integer& m)
{
    ZPoly r = zpoly::mul(a, b);
    reduce(r, m);
    return r;
}

/// Division by a monic h modulo m.
inline std::pair<ZPoly, ZPoly> divmod_monic(ZPoly a, const ZPoly& h, const Integer& m)
{
    reduce(a, m);
    const long dh = zpoly::degree(h);
    if (zpoly::degree(a) < dh)
        return {ZPoly{}, a};
    ZPoly q(a.size() - h.size() + 1);
    for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
        Integer c = a[k + dh];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[k] = c;
        if (c == 0)
            continue;
        for (long j = 0; j <= dh; ++j)
            mpz_submul(a[k + j].get_mpz_t(), c.get_mpz_t(), h[j].get_mpz_t());
    }
    a.resize(dh);
    reduce(a, m);
    zpoly::trim(q);
    return {q, a};
}

inline ZPoly lift_mpoly(const modp::MPoly& f)
{
    ZPoly z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        z[i] = static_cast<unsigned long>(f[i]);
    return z;
}

/// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to the same
/// relations modulo m_next (a divisor of m^2). h stays monic.
inline void step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m_next)
{
    ZPoly e = sub(f, zpoly::mul(g, h));
    reduce(e, m_next);
    auto [q, r] = divmod_monic(zpoly::mul(s, e), h, m_next);
    ZPoly g2 = add(add(g, zpoly::mul(t, e)), zpoly::mul(q, g));
    reduce(g2, m_next);
    ZPoly h2 = add(h, r);
    reduce(h2, m_next);
    ZPoly b = sub(add(zpoly::mul(s, g2), zpoly::mul(t, h2)), ZPoly{1});
    reduce(b, m_next);
    auto [c, d] = divmod_monic(zpoly::mul(s, b), h2, m_next);
    ZPoly s2 = sub(s, d);
    reduce(s2, m_next);
    ZPoly t2 = sub(sub(t, zpoly::mul(t, b)), zpoly::mul(c, g2));
    reduce(t2, m_next);
    g = std::move(g2);
    h = std::move(h2);
    s = std::move(s2);
    t = std::move(t2);
}

/// Lifts the monic factorization f = prod(factors) mod p of a monic f to
/// modulus M = p^k. f must already be reduced mod M.
inline std::vector<ZPoly> multifactor_lift(const ZPoly& f, const std::vector<modp::MPoly>& factors,
                                           const modp::Field& F, const Integer& M)
{
    if (factors.size() == 1) {
        ZPoly r = f;
        reduce(r, M);
        return {r};
    }
    const std::size_t half = factors.size() / 2;
    std::vector<modp::MPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<modp::MPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    modp::MPoly g0{1}, h0{1};
    for (const auto& x : left)
        g0 = modp::mul(F, g0, x);
    for (const auto& x : right)
        h0 = modp::mul(F, h0, x);
    auto [one, s0, t0] = modp::ext_gcd(F, g0, h0);
    if (one.size() != 1)
        throw std::logic_error("Hensel: modular factors are not coprime");
    ZPoly g = lift_mpoly(g0), h = lift_mpoly(h0), s = lift_mpoly(s0), t = lift_mpoly(t0);
    const Integer p(static_cast<unsigned long>(F.p));
    for (Integer m = p; m < M;) {
        Integer next = m * m;
        if (next > M)
            next = M;
        step(f, g, h, s, t, next);
        m = next;
    }
    auto a = multifactor_lift(g, left, F, M);
    auto b = multifactor_lift(h, right, F, M);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace hensel

// ---------------------------------------------------------------------------
// Zassenhaus over Z
// ---------------------------------------------------------------------------

namespace zassenhaus {

struct PrimeChoice {
    std::uint64_t p = 0;
    std::vector<modp::MPoly> factors;
};

inline std::size_t count_modular_factors(const modp::Field& F, const modp::MPoly& f)
{
    std::size_t n = 0;
    for (const auto& [g, d] : modp::distinct_degree(F, f))
        n += static_cast<std::size_t>(modp::degree(g) / d);
    return n;
}

/// A prime p >= 5 is admissible when it does not divide lc(f) and f mod p is
/// squarefree. The smallest admissible prime is used unless it splits f into
/// more than 12 factors; then the next five admissible primes are tried too
/// and the split with the fewest factors wins.
inline PrimeChoice choose_prime(const ZPoly& f)
{
    std::vector<std::pair<std::uint64_t, std::size_t>> candidates;
    const std::size_t max_candidates = 6;
    for (std::uint64_t p = 5; candidates.size() < max_candidates; p += 2) {
        if (!is_prime(p))
            continue;
        modp::Field F{p};
        if (F.reduce(f.back()) == 0)
            continue;
        modp::MPoly fp = modp::monic(F, modp::reduce(F, f));
        if (modp::degree(modp::gcd(F, fp, modp::derivative(F, fp))) != 0)
            continue;
        std::size_t n = count_modular_factors(F, fp);
        candidates.emplace_back(p, n);
        if (candidates.size() == 1 && n <= 12)
            break;
    }
    auto best = candidates.front();
    for (const auto& c : candidates)
        if (c.second < best.second)
            best = c;
    modp::Field F{best.first};
    return {best.first, modp::factor_squarefree(F, modp::monic(F, modp::reduce(F, f)))};
}

/// |lc(f)| * 2^m * ||f||_2 (rounded up): bounds every coefficient of an
/// lc-scaled factor of degree <= m; m defaults to deg f.
inline Integer coefficient_bound(const ZPoly& f, std::optional<long> m = std::nullopt)
{
    Integer norm2 = 0;
    for (const auto& c : f)
        norm2 += c * c;
    Integer norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    Integer b = abs(f.back()) * norm;
    const long e = m ? std::min(*m, zpoly::degree(f)) : zpoly::degree(f);
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return b;
}

inline ZPoly symmetric(ZPoly f, const Integer& M)
{
    const Integer half = M / 2;
    for (auto& c : f) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
        if (c > half)
            c -= M;
    }
    zpoly::trim(f);
    return f;
}

/// Irreducible factors over Z of a primitive squarefree f with positive
/// leading coefficient. With max_degree set, only factors of degree
/// <= max_degree are returned and subsets exceeding it are never formed.
inline std::vector<ZPoly> factor(const ZPoly& f, std::optional<long> max_degree = std::nullopt)
{
    const long n = zpoly::degree(f);
    if (n <= 0)
        return {};
    if (n == 1)
        return (!max_degree || *max_degree >= 1) ? std::vector<ZPoly>{f} : std::vector<ZPoly>{};

    PrimeChoice choice = choose_prime(f);
    const modp::Field F{choice.p};
    if (choice.factors.size() == 1)
        return (!max_degree || *max_degree >= n) ? std::vector<ZPoly>{f} : std::vector<ZPoly>{};

    if (max_degree) {
        bool any_small = false;
        for (const auto& g : choice.factors)
            any_small = any_small || modp::degree(g) <= *max_degree;
        if (!any_small)
            return {};
    }

    const Integer bound = 2 * coefficient_bound(f, max_degree);
    const Integer p(static_cast<unsigned long>(choice.p));
    Integer M = p;
    while (M <= bound)
        M *= p;

    // Monic image of f mod M.
    Integer lc_inv;
    if (mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t()) == 0)
        throw std::logic_error("leading coefficient not invertible mod p^k");
    ZPoly fm = f;
    for (auto& c : fm)
        c *= lc_inv;
    hensel::reduce(fm, M);
    std::vector<ZPoly> lifted = hensel::multifactor_lift(fm, choice.factors, F, M);

    std::vector<ZPoly> found;
    ZPoly rest = f;
    // In bounded mode only modular factors of degree <= max_degree can take part.
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < lifted.size(); ++i)
        if (!max_degree || zpoly::degree(lifted[i]) <= *max_degree)
            live.push_back(i);
    auto smallest_sum = [&](std::size_t s) {
        std::vector<long> degs;
        for (auto i : live)
            degs.push_back(zpoly::degree(lifted[i]));
        std::sort(degs.begin(), degs.end());
        long sum = 0;
        for (std::size_t i = 0; i < s && i < degs.size(); ++i)
            sum += degs[i];
        return sum;
    };

    auto try_subset = [&](const std::vector<std::size_t>& subset) -> bool {
        long deg = 0;
        for (auto i : subset)
            deg += zpoly::degree(lifted[live[i]]);
        if (max_degree && deg > *max_degree)
            return false;
        ZPoly g{rest.back()};
        for (auto i : subset)
            g = hensel::mulmod(g, lifted[live[i]], M);
        g = symmetric(std::move(g), M);
        // Cheap filter: the constant term must divide lc(rest) * rest(0).
        if (rest[0] != 0 && g[0] != 0) {
            Integer target = rest.back() * rest[0];
            if (!mpz_divisible_p(target.get_mpz_t(), g[0].get_mpz_t()))
                return false;
        }
        g = zpoly::primitive(std::move(g));
        auto q = zpoly::divide_exact(rest, g);
        if (!q)
            return false;
        found.push_back(g);
        rest = std::move(*q);
        return true;
    };

    for (std::size_t s = 1;; ++s) {
        const std::size_t r = live.size();
        const bool bounded = max_degree.has_value();
        if (bounded ? (s > r || smallest_sum(s) > *max_degree) : 2 * s > r)
            break;
        // Enumerate s-subsets of [0, r) in lexicographic order; restart after a hit.
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i)
            idx[i] = i;
        bool hit = false;
        while (true) {
            if (try_subset(idx)) {
                std::vector<std::size_t> keep;
                for (std::size_t i = 0; i < live.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        keep.push_back(live[i]);
                live = std::move(keep);
                hit = true;
                break;
            }
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == live.size() - s + (k - 1))
                --k;
            if (k == 0)
                break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (hit)
            --s; // retry the same subset size on the reduced set
        if (live.empty())
            break;
    }
    // In bounded mode every admissible subset was examined, so a remainder of
    // admissible degree has already been collected.
    if (!max_degree && zpoly::degree(rest) > 0)
        found.push_back(rest);
    return found;
}

} // namespace zassenhaus

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

namespace detail {

inline void sort_factors(std::vector<std::pair<Poly, int>>& v)
{
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (canonical_less(a.first, b.first))
            return true;
        if (canonical_less(b.first, a.first))
            return false;
        return a.second < b.second;
    });
}

inline std::vector<std::pair<Poly, int>> factor_impl(const Poly& f, std::optional<long> max_degree)
{
    std::vector<std::pair<Poly, int>> out;
    for (const auto& [part, e] : squarefree_decompose(f).factors) {
        if (max_degree && *max_degree < 1)
            break;
        for (const auto& g : zassenhaus::factor(zpoly::from_poly(part), max_degree))
            out.emplace_back(zpoly::to_poly(g).monic(), e);
    }
    sort_factors(out);
    return out;
}

} // namespace detail

/// Complete factorization over Q: content = lc(f), monic irreducible factors
/// ordered by degree then coefficients.
inline FactoredPoly factor_rationals(const Poly& f)
{
    if (f.is_zero())
        throw std::invalid_argument("factor_rationals of zero polynomial");
    FactoredPoly out;
    out.content = f.lead();
    out.factors = detail::factor_impl(f, std::nullopt);
    return out;
}

/// The monic irreducible factors of f of degree <= N, with multiplicity.
inline std::vector<std::pair<Poly, int>> factors_up_to_degree(const Poly& f, long N)
{
    if (f.is_zero())
        throw std::invalid_argument("factors_up_to_degree of zero polynomial");
    return detail::factor_impl(f, N);
}

/// All rational roots with multiplicity, descending. Candidates are a/b with a
/// dividing the lowest nonzero coefficient and b the leading coefficient of the
/// cleared-denominator polynomial.
inline std::vector<Rational> rational_roots(const Poly& f)
{
    if (f.is_zero())
        throw std::invalid_argument("rational_roots of zero polynomial");
    std::vector<Rational> roots;
    ZPoly z = zpoly::from_poly(f);
    std::size_t low = 0;
    while (low < z.size() && z[low] == 0)
        ++low;
    for (std::size_t i = 0; i < low; ++i)
        roots.emplace_back(0);
    z.erase(z.begin(), z.begin() + static_cast<long>(low));
    if (z.size() > 1) {
        Poly g = zpoly::to_poly(z);
        const auto nums = divisors(z.front());
        const auto dens = divisors(z.back());
        std::vector<Rational> cands;
        for (const auto& a : nums)
            for (const auto& b : dens) {
                Rational c = make_rational(a, b);
                cands.push_back(c);
                cands.push_back(-c);
            }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (const auto& c : cands) {
            if (g.degree() < 1)
                break;
            while (g.degree() >= 1 && g.eval(c) == 0) {
                roots.push_back(c);
                g = exact_div(g, Poly{-c, 1});
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Rational& a, const Rational& b) { return a > b; });
    return roots;
}

} // namespace pellpoly
