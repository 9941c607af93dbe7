#pragma once

/**
 * @file builder.hpp
 * @brief Pellian polynomials of the form F^2 D: deciding a given F and
 *        enumerating every irreducible F of a given degree.
 */

#include "pellpoly/newfactors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pellpoly {

/// The continued fraction of sqrt(D) found no solution within the step budget.
class base_not_solved_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SquareTimesQuery {
    enum class Verdict { pellian, not_pellian, base_not_solved };

    Poly D;
    Poly F;
    Verdict verdict = Verdict::base_not_solved;
    std::optional<long> witness_n; ///< least n with F | v_n
    /// (u_n, v_n / F), a solution of X^2 - F^2 D Y^2 = 1.
    std::optional<std::pair<Poly, Poly>> solution;
};

namespace detail {

inline void check_squarefree_base(const Poly& D)
{
    if (D.is_constant())
        throw std::invalid_argument("D must be nonconstant");
    if (squarefree_part(D).degree() != D.degree())
        throw std::invalid_argument("D must be squarefree");
}

inline std::optional<PellInstance> solve_base(const Poly& D, long max_steps)
{
    auto sol = fundamental_solution(D, max_steps);
    if (!sol)
        return std::nullopt;
    return PellInstance(D, sol->first, sol->second);
}

/// The unique m with G | v_m^new, searched over phi(2m)/2 <= deg G, and the
/// multiplicity of G there.
inline std::optional<std::pair<long, int>> new_part_index(const PellInstance& inst, const Poly& G)
{
    for (long m : indices_up_to_cosine_degree(G.degree())) {
        const Poly vm = v_new_poly(inst, m);
        if (vm.is_constant())
            continue;
        if (int e = multiplicity(G, vm); e > 0)
            return std::make_pair(m, e);
    }
    return std::nullopt;
}

} // namespace detail

/// Whether F^2 D is Pellian, i.e. whether F divides some v_n. An irreducible
/// G divides exactly one new part v_m^new and then divides v_n iff m | n, with
/// the same multiplicity; so F | v_n iff every G^e | v_m^new and the least
/// such n is the lcm of those m.
inline SquareTimesQuery is_square_times_pellian(const Poly& D, const Poly& F, long max_steps = 64)
{
    if (F.is_constant())
        throw std::invalid_argument("is_square_times_pellian: F must be nonconstant");
    detail::check_squarefree_base(D);
    if (!gcd(F, D).is_constant())
        throw std::invalid_argument("is_square_times_pellian: gcd(F, D) must be 1");

    SquareTimesQuery q{D, F, SquareTimesQuery::Verdict::base_not_solved, std::nullopt, std::nullopt};
    std::optional<PellInstance> inst;
    try {
        inst = detail::solve_base(D, max_steps);
    } catch (const not_pellian_error&) {
        // A solution (X, Y) for F^2 D gives (X, F Y) for D.
        q.verdict = SquareTimesQuery::Verdict::not_pellian;
        return q;
    }
    if (!inst)
        return q;

    long witness = 1;
    for (const auto& [G, e] : factor_rationals(F).factors) {
        auto hit = detail::new_part_index(*inst, G);
        if (!hit || hit->second < e) {
            q.verdict = SquareTimesQuery::Verdict::not_pellian;
            return q;
        }
        witness = std::lcm(witness, hit->first);
    }
    const SolutionIndex s = generate(*inst, witness);
    auto [Y, r] = divmod(s.v_n, F);
    if (!r.is_zero())
        throw std::logic_error("is_square_times_pellian: F does not divide v_witness");
    if (!is_pell_solution(s.u_n, Y, F * F * D))
        throw std::logic_error("is_square_times_pellian: (u_n, v_n / F) fails for F^2 D");
    q.verdict = SquareTimesQuery::Verdict::pellian;
    q.witness_n = witness;
    q.solution = std::make_pair(s.u_n, std::move(Y));
    return q;
}

/// Every monic irreducible F of degree f with F^2 D Pellian, each with the
/// index n of the new part it divides; ordered by n, then canonically.
inline std::vector<WitnessedFactor> enumerate_square_factors(const Poly& D, long f, long max_steps = 64)
{
    if (f < 1)
        throw std::invalid_argument("enumerate_square_factors: f must be >= 1");
    detail::check_squarefree_base(D);
    auto inst = detail::solve_base(D, max_steps);
    if (!inst)
        throw base_not_solved_error("no fundamental solution of D within " + std::to_string(max_steps) + " steps");

    std::vector<WitnessedFactor> out;
    std::vector<SolutionIndex> sols;
    for (long n : indices_up_to_cosine_degree(f)) {
        if (n == 1 && inst->v().is_constant())
            continue;
        for (const auto& fe : new_factors_up_to_degree(*inst, n, f)) {
            if (fe.first.degree() != f)
                continue;
            if (sols.size() <= static_cast<std::size_t>(n))
                sols = generate_range(*inst, n);
            const auto& s = sols[static_cast<std::size_t>(n)];
            const Poly& F = fe.first;
            if (!is_pell_solution(s.u_n, exact_div(s.v_n, F), F * F * D))
                throw std::logic_error("enumerate_square_factors: unsound factor");
            out.push_back({F, n});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.n != b.n)
            return a.n < b.n;
        return canonical_less(a.factor, b.factor);
    });
    return out;
}

} // namespace pellpoly
