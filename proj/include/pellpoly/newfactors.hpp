#pragma once

/**
 * @file newfactors.hpp
 * @brief Old/new decomposition of v_n, the product, Moebius and gcd
 *        identities, and the catalogue of low-degree irreducible factors over
 *        all new parts.
 */

#include "pellpoly/factor.hpp"
#include "pellpoly/pell.hpp"
#include "pellpoly/psi.hpp"

#include <array>
#include <atomic>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pellpoly {

// ---------------------------------------------------------------------------
// Bound audit: every check of a proven bound is counted; a violation throws.
// ---------------------------------------------------------------------------

enum class Bound {
    new_factor_count, ///< #factors of v_n^new <= deg u (n even), 2 deg u (n odd)
    min_factor_degree, ///< every factor of v_n^new has degree >= phi(2n)/2
    atlas_size, ///< #entries of the degree-N atlas <= 4 N^2 deg u
};

struct BoundTally {
    long checks = 0;
    long violations = 0;
};

namespace detail {

inline std::array<std::array<std::atomic<long>, 2>, 3>& bound_counters()
{
    static std::array<std::array<std::atomic<long>, 2>, 3> counters{};
    return counters;
}

} // namespace detail

inline BoundTally bound_tally(Bound b)
{
    auto& c = detail::bound_counters()[static_cast<std::size_t>(b)];
    return {c[0].load(), c[1].load()};
}

inline void check_bound(Bound b, bool holds, const std::string& what)
{
    auto& c = detail::bound_counters()[static_cast<std::size_t>(b)];
    ++c[0];
    if (!holds) {
        ++c[1];
        throw std::logic_error("bound violated: " + what);
    }
}

/// phi(2n)/2, the degree of Q(cos(pi r/n)) over Q.
inline long cosine_degree(long n)
{
    return n == 1 ? 1 : totient(2 * n) / 2;
}

/// All n >= 1 with phi(2n)/2 <= N, ascending. phi(2n) >= sqrt(n) bounds the
/// scan by n <= 4N^2.
inline std::vector<long> indices_up_to_cosine_degree(long N)
{
    std::vector<long> out;
    if (N < 1)
        return out;
    for (long n = 1; n <= 4 * N * N; ++n)
        if (totient(2 * n) <= 2 * N)
            out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// New parts
// ---------------------------------------------------------------------------

struct NewPart {
    long n = 0;
    Poly poly;
    FactoredPoly factors;
};

/// v_n^new without its factorization: v for n = 1, psi_n(u(t)) otherwise.
inline Poly v_new_poly(const PellInstance& inst, long n)
{
    if (n < 1)
        throw std::invalid_argument("v_new: n must be >= 1");
    return n == 1 ? inst.v() : compose(psi(n).poly, inst.u());
}

inline void check_new_part_bounds(const PellInstance& inst, long n, const FactoredPoly& f)
{
    if (n < 2)
        return;
    const long du = inst.u().degree();
    const long cap = n % 2 == 0 ? du : 2 * du;
    check_bound(Bound::new_factor_count, f.count_with_multiplicity() <= cap,
                "v_" + std::to_string(n) + "^new has more than " + std::to_string(cap) + " factors");
    const long dmin = cosine_degree(n);
    for (const auto& fe : f.factors)
        check_bound(Bound::min_factor_degree, fe.first.degree() >= dmin,
                    "factor of v_" + std::to_string(n) + "^new below degree " + std::to_string(dmin));
}

inline NewPart v_new(const PellInstance& inst, long n)
{
    NewPart part{n, v_new_poly(inst, n), {}};
    part.factors = factor_rationals(part.poly);
    check_new_part_bounds(inst, n, part.factors);
    return part;
}

/// Irreducible factors of v_n^new of degree <= N, with the minimum-degree
/// bound checked on each.
inline std::vector<std::pair<Poly, int>> new_factors_up_to_degree(const PellInstance& inst, long n, long N)
{
    auto fs = factors_up_to_degree(v_new_poly(inst, n), N);
    if (n >= 2)
        for (const auto& fe : fs)
            check_bound(Bound::min_factor_degree, fe.first.degree() >= cosine_degree(n),
                        "factor of v_" + std::to_string(n) + "^new below degree " +
                            std::to_string(cosine_degree(n)));
    return fs;
}

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

/// v_n = v prod_{m | n, m > 1} psi_m(u) against the recurrence, and
/// prod_{m | n} v_m^{mu(n/m)} = v_n^new with negative exponents cleared.
inline bool verify_product_formula(const PellInstance& inst, long n)
{
    if (n < 1)
        throw std::invalid_argument("verify_product_formula: n must be >= 1");
    const auto sols = generate_range(inst, n);
    Poly product = inst.v();
    for (long m : divisors_of(n))
        if (m > 1)
            product *= compose(psi(m).poly, inst.u());
    if (product != sols[static_cast<std::size_t>(n)].v_n)
        return false;

    Poly lhs = Poly::constant(1), rhs = v_new_poly(inst, n);
    for (long m : divisors_of(n)) {
        const int mu = moebius(n / m);
        if (mu == 1)
            lhs *= sols[static_cast<std::size_t>(m)].v_n;
        else if (mu == -1)
            rhs *= sols[static_cast<std::size_t>(m)].v_n;
    }
    return lhs == rhs;
}

/// gcd(v_m, v_n) ~ v_gcd(m,n), and gcd(v_m, v_n / v_m) = 1 when m | n, both up
/// to nonzero scalars. sols must hold v_0 .. v_max(m,n).
inline bool verify_gcd_identities(const std::vector<SolutionIndex>& sols, long m, long n)
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("verify_gcd_identities: m, n must be >= 1");
    const Poly& vm = sols.at(static_cast<std::size_t>(m)).v_n;
    const Poly& vn = sols.at(static_cast<std::size_t>(n)).v_n;
    const Poly& vg = sols.at(static_cast<std::size_t>(std::gcd(m, n))).v_n;
    if (!equal_up_to_scalar(gcd(vm, vn), vg))
        return false;
    if (n % m == 0 && gcd(vm, exact_div(vn, vm)) != Poly::constant(1))
        return false;
    return true;
}

inline bool verify_gcd_identities(const PellInstance& inst, long m, long n)
{
    return verify_gcd_identities(generate_range(inst, std::max(m, n)), m, n);
}

// ---------------------------------------------------------------------------
// Atlas of low-degree factors
// ---------------------------------------------------------------------------

struct AtlasEntry {
    Poly factor; ///< monic irreducible
    std::vector<long> witnesses; ///< every scanned n with factor | v_n^new
};

struct FactorAtlas {
    long N = 0;
    std::vector<long> scan_range;
    std::vector<AtlasEntry> entries; ///< sorted by canonical_less
    long bound_4n2 = 0; ///< 4 N^2 deg u, asserted
    long bound_10n = 0; ///< 10 N deg u, reported only
};

namespace detail {

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return canonical_less(a, b); }
};

} // namespace detail

/// Every irreducible factor of degree <= N of any v_n^new; only n with
/// phi(2n)/2 <= N can contribute.
inline FactorAtlas enumerate_atlas(const PellInstance& inst, long N)
{
    FactorAtlas atlas;
    atlas.N = N;
    if (N < 1)
        return atlas;
    const long du = inst.u().degree();
    atlas.scan_range = indices_up_to_cosine_degree(N);
    atlas.bound_4n2 = 4 * N * N * du;
    atlas.bound_10n = 10 * N * du;
    std::map<Poly, std::vector<long>, detail::PolyLess> found;
    for (long n : atlas.scan_range) {
        if (n == 1 && inst.v().is_constant())
            continue;
        for (const auto& fe : new_factors_up_to_degree(inst, n, N))
            found[fe.first].push_back(n);
    }
    for (auto& [f, ns] : found)
        atlas.entries.push_back({f, std::move(ns)});
    check_bound(Bound::atlas_size, static_cast<long>(atlas.entries.size()) <= atlas.bound_4n2,
                "atlas of degree " + std::to_string(N) + " exceeds 4 N^2 deg u");
    return atlas;
}

struct WitnessedFactor {
    Poly factor; ///< monic irreducible
    long n = 0;
};

namespace detail {

inline std::vector<WitnessedFactor> new_factors_of_degree(const PellInstance& inst, long degree, long n_max)
{
    std::vector<WitnessedFactor> out;
    for (long n = 1; n <= n_max; ++n) {
        if (n == 1 && inst.v().is_constant())
            continue;
        for (const auto& fe : new_factors_up_to_degree(inst, n, degree))
            if (fe.first.degree() == degree)
                out.push_back({fe.first, n});
    }
    return out;
}

} // namespace detail

/// All linear factors of all new parts; none occur beyond n = 3.
inline std::vector<WitnessedFactor> linear_new_factors(const PellInstance& inst)
{
    return detail::new_factors_of_degree(inst, 1, 3);
}

/// All irreducible quadratic factors of all new parts; none occur beyond n = 6.
inline std::vector<WitnessedFactor> quadratic_new_factors(const PellInstance& inst)
{
    return detail::new_factors_of_degree(inst, 2, 6);
}

} // namespace pellpoly
