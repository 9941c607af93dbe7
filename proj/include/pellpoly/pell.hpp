#pragma once

/**
 * @file pell.hpp
 * @brief The polynomial Pell equation u^2 - D*v^2 = 1 over Q[t]: fundamental
 *        solutions from the continued fraction of sqrt(D), the solution family
 *        (u_n, v_n), and the distinct-zeros non-Pellian criterion.
 */

#include "pellpoly/poly.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pellpoly {

inline bool is_pell_solution(const Poly& u, const Poly& v, const Poly& D)
{
    return u * u - D * (v * v) == Poly::constant(1);
}

/// A Pellian D with its fundamental solution. Construction validates the Pell
/// identity, v != 0 and even deg D.
class PellInstance {
public:
    PellInstance(Poly D, Poly u, Poly v) : D_(std::move(D)), u_(std::move(u)), v_(std::move(v))
    {
        if (v_.is_zero())
            throw std::invalid_argument("PellInstance: v must be nonzero");
        if (D_.is_zero() || D_.degree() % 2 != 0)
            throw std::invalid_argument("PellInstance: D must have even degree");
        if (!is_pell_solution(u_, v_, D_))
            throw std::invalid_argument("PellInstance: (u, v) does not solve u^2 - D v^2 = 1");
    }

    /// D = u^2 - 1 with fundamental solution (u, 1); u must be nonconstant.
    static PellInstance from_u(const Poly& u)
    {
        if (u.is_constant())
            throw std::invalid_argument("PellInstance::from_u: u must be nonconstant");
        return PellInstance(u * u - Poly::constant(1), u, Poly::constant(1));
    }

    const Poly& D() const noexcept { return D_; }
    const Poly& u() const noexcept { return u_; }
    const Poly& v() const noexcept { return v_; }

private:
    Poly D_, u_, v_;
};

/// One step of the continued fraction of sqrt(D): (P_i + sqrt(D)) / Q_i with
/// partial quotient a_i and convergent h_i / k_i.
struct CFState {
    long step = 0;
    Poly P, Q, a, h, k;
};

struct PellSearch {
    std::optional<std::pair<Poly, Poly>> solution;
    long steps = 0;
    /// h^2 - D k^2 of the convergent that produced the solution.
    Rational norm_constant = 0;
    std::vector<CFState> trace;
};

namespace detail {

inline void check_not_square(const Poly& D)
{
    FactoredPoly sq = squarefree_decompose(D);
    bool all_even = rational_sqrt(sq.content).has_value();
    for (const auto& fe : sq.factors)
        all_even = all_even && fe.second % 2 == 0;
    if (all_even)
        throw not_pellian_error(not_pellian_error::Kind::only_trivial_solutions,
                                "D is a perfect square; only trivial solutions exist");
}

/// Fix signs so that both leading coefficients are positive.
inline std::pair<Poly, Poly> normalize_signs(Poly u, Poly v)
{
    if (sgn(u.lead()) < 0)
        u = -u;
    if (sgn(v.lead()) < 0)
        v = -v;
    return {std::move(u), std::move(v)};
}

} // namespace detail

/**
 * Runs the continued fraction of sqrt(D) for at most max_steps partial
 * quotients.
 *
 * The floor of (P_i + sqrt(D)) / Q_i is the polynomial quotient of
 * (P_i + a_0) by Q_i, where a_0 is the polynomial part of sqrt(D): the
 * remaining tail of sqrt(D) has negative degree. When Q_{i+1} is a nonzero
 * constant, h_i^2 - D k_i^2 = c is constant. If c = e^2 is a rational square
 * the solution is (h_i/e, k_i/e); otherwise it is ((h^2 + D k^2)/c, 2hk/c).
 *
 * An empty solution after max_steps means "not found within budget", never
 * "not Pellian". Throws not_pellian_error for odd degree, a non-square leading
 * coefficient or a perfect-square D.
 */
inline PellSearch solve_pell(const Poly& D, long max_steps, bool keep_trace = false)
{
    if (max_steps <= 0)
        throw std::invalid_argument("max_steps must be positive");
    detail::check_even_square_lead(D);
    detail::check_not_square(D);

    const long d = D.degree() / 2;
    const Poly a0 = laurent_sqrt(D, static_cast<std::size_t>(d) + 1).polynomial_part();

    PellSearch out;
    Poly P, Q = Poly::constant(1);
    Poly h_prev = Poly::constant(1), h_prev2; // h_{-1}, h_{-2}
    Poly k_prev, k_prev2 = Poly::constant(1); // k_{-1}, k_{-2}
    for (long i = 0; i < max_steps; ++i) {
        Poly a = divmod(P + a0, Q).first;
        if (i >= 1 && a.degree() < 1)
            throw std::logic_error("continued fraction: partial quotient of degree < 1");
        Poly h = a * h_prev + h_prev2;
        Poly k = a * k_prev + k_prev2;
        // h_i k_{i-1} - h_{i-1} k_i = (-1)^(i-1)
        if (h * k_prev - h_prev * k != Poly::constant(i % 2 == 0 ? -1 : 1))
            throw std::logic_error("continued fraction: convergent determinant identity failed");
        Poly P_next = a * Q - P;
        auto [Q_next, r] = divmod(D - P_next * P_next, Q);
        if (!r.is_zero())
            throw std::logic_error("continued fraction: Q_i does not divide D - P_i^2");
        if (Q_next.degree() >= d && d >= 1)
            throw std::logic_error("continued fraction: deg Q_i >= deg a_0");
        if (keep_trace)
            out.trace.push_back({i, P, Q, a, h, k});
        out.steps = i + 1;

        if (Q_next.is_constant()) {
            Poly norm = h * h - D * (k * k);
            if (!norm.is_constant() || norm.is_zero())
                throw std::logic_error("continued fraction: constant Q without constant norm");
            const Rational c = norm.coeff(0);
            out.norm_constant = c;
            Poly u, v;
            if (auto e = rational_sqrt(c)) {
                u = h * Rational(1 / *e);
                v = k * Rational(1 / *e);
            } else {
                u = (h * h + D * (k * k)) * Rational(1 / c);
                v = (h * k) * Rational(2 / c);
            }
            if (!is_pell_solution(u, v, D))
                throw std::logic_error("continued fraction: normalized pair fails Pell identity");
            out.solution = detail::normalize_signs(std::move(u), std::move(v));
            return out;
        }
        P = std::move(P_next);
        Q = std::move(Q_next);
        h_prev2 = std::exchange(h_prev, std::move(h));
        k_prev2 = std::exchange(k_prev, std::move(k));
    }
    return out;
}

inline std::optional<std::pair<Poly, Poly>> fundamental_solution(const Poly& D, long max_steps = 64)
{
    return solve_pell(D, max_steps).solution;
}

/// (u_n, v_n) with u_n + v_n sqrt(D) = (u + v sqrt(D))^n.
struct SolutionIndex {
    long n = 0;
    Poly u_n, v_n;
};

/// All (u_m, v_m) for 0 <= m <= n_max by the recurrence
/// u_{m+1} = u u_m + D v v_m, v_{m+1} = u v_m + v u_m.
inline std::vector<SolutionIndex> generate_range(const PellInstance& inst, long n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("generate_range: n_max must be >= 0");
    std::vector<SolutionIndex> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    Poly un = Poly::constant(1), vn;
    const Poly Dv = inst.D() * inst.v();
    for (long m = 0; m <= n_max; ++m) {
        out.push_back({m, un, vn});
        Poly u_next = inst.u() * un + Dv * vn;
        Poly v_next = inst.u() * vn + inst.v() * un;
        un = std::move(u_next);
        vn = std::move(v_next);
    }
    return out;
}

/// (u_n, v_n) for any integer n; u_{-n} = u_n, v_{-n} = -v_n. The Pell
/// identity is re-verified before returning.
inline SolutionIndex generate(const PellInstance& inst, long n)
{
    const long m = n < 0 ? -n : n;
    SolutionIndex s = generate_range(inst, m).back();
    if (n < 0) {
        s.n = n;
        s.v_n = -s.v_n;
    }
    if (!is_pell_solution(s.u_n, s.v_n, inst.D()))
        throw std::logic_error("generate: Pell identity violated");
    return s;
}

/// True when D is certainly not Pellian because it has at most deg(D)/2
/// distinct complex zeros; false is inconclusive.
inline bool dubickas_nonpellian(const Poly& D)
{
    if (D.is_constant())
        throw std::invalid_argument("dubickas_nonpellian: D must be nonconstant");
    return 2 * squarefree_part(D).degree() <= D.degree();
}

} // namespace pellpoly
