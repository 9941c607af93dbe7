#pragma once

/**
 * @file cli.hpp
 * @brief The `pell` command line: subcommands over every module, JSON or text
 *        reports, and an exit-code taxonomy separating certified negatives
 *        from exhausted budgets.
 */

#include "pellpoly/builder.hpp"
#include "pellpoly/reproots.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace pellpoly::cli {

enum ExitCode : int {
    ok = 0,
    negative = 1, ///< certified mathematical "no"
    unknown = 2, ///< step budget exhausted
    usage = 64,
};

using Json = nlohmann::ordered_json;

/// Polynomial-valued argument that failed to parse; the message names the
/// flag and the character position.
class argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Poly parse_arg(const std::string& flag, const std::string& text)
{
    try {
        return parse_poly(text);
    } catch (const parse_error& e) {
        throw argument_error(flag + ": " + e.what());
    }
}

inline Json factors_json(const FactoredPoly& f, char var)
{
    Json arr = Json::array();
    for (const auto& [p, e] : f.factors)
        arr.push_back({{"factor", to_string(p, var)}, {"multiplicity", e}});
    return arr;
}

inline std::string not_pellian_reason(not_pellian_error::Kind k)
{
    switch (k) {
    case not_pellian_error::Kind::odd_degree:
        return "odd_degree";
    case not_pellian_error::Kind::leading_coefficient:
        return "leading_coefficient_not_square";
    case not_pellian_error::Kind::only_trivial_solutions:
        return "perfect_square";
    }
    return "unknown";
}

inline void emit(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

/// The fundamental solution of D, or the exit code explaining its absence
/// after a JSON status report has been written.
inline std::optional<PellInstance> base_instance(const Poly& D, long max_steps, std::ostream& out, int& code)
{
    try {
        auto sol = fundamental_solution(D, max_steps);
        if (sol)
            return PellInstance(D, sol->first, sol->second);
        emit(out, Json{{"status", "unknown"}, {"max_steps", max_steps}});
        code = unknown;
    } catch (const not_pellian_error& e) {
        emit(out, Json{{"status", "not_pellian_certified"}, {"reason", not_pellian_reason(e.kind())}});
        code = negative;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// verify: seeded invariant suite
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    long cases = 0;
    bool passed = true;
    std::string detail;
};

inline Poly random_poly(std::mt19937_64& rng, long degree, long bound, bool monic)
{
    std::uniform_int_distribution<long> coef(-bound, bound);
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c)
        x = coef(rng);
    if (monic)
        c.back() = 1;
    while (c.back() == 0)
        c.back() = coef(rng);
    return Poly(std::move(c));
}

inline std::vector<Check> run_verify(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Check> checks;
    auto run = [&](const std::string& name, long cases, const std::function<bool(long)>& body) {
        Check c{name, cases, true, {}};
        try {
            for (long i = 0; i < cases && c.passed; ++i)
                if (!body(i)) {
                    c.passed = false;
                    c.detail = "case " + std::to_string(i);
                }
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = e.what();
        }
        checks.push_back(std::move(c));
    };

    std::vector<PellInstance> instances;
    for (int i = 0; i < 4; ++i) {
        Poly p = random_poly(rng, 1 + static_cast<long>(rng() % 2), 3, false);
        Poly shift = Poly::constant(std::uniform_int_distribution<long>(-2, 2)(rng));
        instances.push_back(PellInstance::from_u(pow(p, 1 + rng() % 2) + shift));
    }

    run("cf_recovers_constructed_solution", 4, [&](long i) {
        const auto& inst = instances[static_cast<std::size_t>(i)];
        auto sol = fundamental_solution(inst.D());
        return sol && equal_up_to_scalar(sol->first, inst.u()) && sol->second.is_constant();
    });
    run("pell_identity_n_le_12", 4, [&](long i) {
        for (const auto& s : generate_range(instances[static_cast<std::size_t>(i)], 12))
            if (!is_pell_solution(s.u_n, s.v_n, instances[static_cast<std::size_t>(i)].D()))
                return false;
        return true;
    });
    run("product_formula_n_le_12", 4, [&](long i) {
        for (long n = 1; n <= 12; ++n)
            if (!verify_product_formula(instances[static_cast<std::size_t>(i)], n))
                return false;
        return true;
    });
    run("gcd_identities_m_n_le_8", 2, [&](long i) {
        auto sols = generate_range(instances[static_cast<std::size_t>(i)], 8);
        for (long m = 1; m <= 8; ++m)
            for (long n = 1; n <= 8; ++n)
                if (!verify_gcd_identities(sols, m, n))
                    return false;
        return true;
    });
    run("new_part_bounds_n_le_10", 2, [&](long i) {
        for (long n = 2; n <= 10; ++n)
            v_new(instances[static_cast<std::size_t>(i)], n);
        return true;
    });
    run("psi_structure_m_le_30", 29, [&](long i) {
        const long m = i + 2;
        const Poly& p = psi(m).poly;
        return p.degree() == totient(m) && is_integral_in_2u(p) && p == psi_via_real_cyclotomic(m);
    });
    run("factor_reassembly", 10, [&](long) {
        Poly f = random_poly(rng, 2, 4, false) * random_poly(rng, 3, 4, false) * random_poly(rng, 1, 4, false);
        return factor_rationals(f).expand() == f;
    });
    run("squarefree_reassembly", 10, [&](long) {
        Poly a = random_poly(rng, 2, 4, true);
        Poly f = a * a * random_poly(rng, 2, 4, false);
        return squarefree_decompose(f).expand() == f;
    });
    run("repeated_root_bound", 4, [&](long i) {
        const auto& inst = instances[static_cast<std::size_t>(i)];
        return repeated_roots_report(inst).degree_sum <= inst.u().degree() - 1;
    });
    return checks;
}

} // namespace detail

/// Runs one command line (args excludes the program name). Reports go to out,
/// diagnostics to err; the return value is the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Polynomial Pell equations over Q[t]", "pell"};
    app.require_subcommand(1);

    std::string D_text, F_text;
    long max_steps = 64, n = 1, m = 2, degree = 1;
    std::uint64_t seed = 1;
    bool json = false, star = false;

    auto add_D = [&](CLI::App* sub) { sub->add_option("--D", D_text, "polynomial D(t)")->required(); };
    auto add_steps = [&](CLI::App* sub) {
        sub->add_option("--max-steps", max_steps, "continued-fraction step budget (default: $PELL_MAX_STEPS or 64)")
            ->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "fundamental solution of u^2 - D v^2 = 1");
    add_D(solve);
    add_steps(solve);

    auto* gen = app.add_subcommand("generate", "the n-th solution (u_n, v_n)");
    add_D(gen);
    add_steps(gen);
    gen->add_option("--n", n, "solution index (may be negative)")->required();

    auto* psi_cmd = app.add_subcommand("psi", "psi_m(u), or psi*_m(u) with --star");
    psi_cmd->add_option("--m", m, "index m >= 2")->required()->check(CLI::Range(2L, 100000L));
    psi_cmd->add_flag("--star", star, "odd-index half psi*_m");
    psi_cmd->add_flag("--json", json, "JSON output");

    auto* newpart = app.add_subcommand("newpart", "factored new part v_n^new");
    add_D(newpart);
    add_steps(newpart);
    newpart->add_option("--n", n, "index n >= 1")->required()->check(CLI::PositiveNumber);

    auto* atlas = app.add_subcommand("atlas", "all irreducible factors of degree <= N of all new parts");
    add_D(atlas);
    add_steps(atlas);
    atlas->add_option("--max-degree", degree, "degree cap N")->required()->check(CLI::PositiveNumber);
    atlas->add_flag("--json", json, "JSON output");

    auto* reproots = app.add_subcommand("reproots", "repeated roots of all new parts");
    add_D(reproots);
    add_steps(reproots);

    auto* sq = app.add_subcommand("square-times", "is F^2 D Pellian");
    add_D(sq);
    add_steps(sq);
    sq->add_option("--F", F_text, "polynomial F(t)")->required();

    auto* enumF = app.add_subcommand("enumerate-F", "irreducible F of a given degree with F^2 D Pellian");
    add_D(enumF);
    add_steps(enumF);
    enumF->add_option("--degree", degree, "degree f")->required()->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "seeded invariant suite");
    verify->add_option("--seed", seed, "random seed");
    verify->add_flag("--json", json, "JSON output");

    if (const char* env = std::getenv("PELL_MAX_STEPS")) {
        const std::string text = env;
        long value = 0;
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() || value <= 0) {
            err << "error: PELL_MAX_STEPS must be a positive integer, got '" << text << "'\n";
            return usage;
        }
        max_steps = value;
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    int code = ok;
    try {
        if (*solve) {
            const Poly D = detail::parse_arg("--D", D_text);
            try {
                PellSearch r = solve_pell(D, max_steps);
                if (r.solution) {
                    detail::emit(out, Json{{"status", "found"},
                                           {"u", to_string(r.solution->first)},
                                           {"v", to_string(r.solution->second)},
                                           {"steps", r.steps}});
                } else {
                    detail::emit(out, Json{{"status", "unknown"}, {"steps", r.steps}});
                    code = unknown;
                }
            } catch (const not_pellian_error& e) {
                detail::emit(out, Json{{"status", "not_pellian_certified"},
                                       {"reason", detail::not_pellian_reason(e.kind())},
                                       {"steps", 0}});
                code = negative;
            }
        } else if (*gen) {
            const Poly D = detail::parse_arg("--D", D_text);
            if (auto inst = detail::base_instance(D, max_steps, out, code)) {
                SolutionIndex s = generate(*inst, n);
                detail::emit(out, Json{{"status", "found"}, {"n", s.n}, {"u", to_string(s.u_n)}, {"v", to_string(s.v_n)}});
            }
        } else if (*psi_cmd) {
            const Poly p = star ? psi_star(m) : psi(m).poly;
            const FactoredPoly f = factor_rationals(p);
            if (json) {
                detail::emit(out, Json{{"m", m},
                                       {"star", star},
                                       {"poly", to_string(p, 'u')},
                                       {"content", to_string(f.content)},
                                       {"factors", detail::factors_json(f, 'u')}});
            } else {
                out << to_string(p, 'u') << '\n';
                out << "content " << f.content << '\n';
                for (const auto& [g, e] : f.factors)
                    out << "factor " << to_string(g, 'u') << " ^" << e << '\n';
            }
        } else if (*newpart) {
            const Poly D = detail::parse_arg("--D", D_text);
            if (auto inst = detail::base_instance(D, max_steps, out, code)) {
                NewPart part = v_new(*inst, n);
                detail::emit(out, Json{{"status", "found"},
                                       {"n", n},
                                       {"poly", to_string(part.poly)},
                                       {"content", to_string(part.factors.content)},
                                       {"factors", detail::factors_json(part.factors, 't')}});
            }
        } else if (*atlas) {
            const Poly D = detail::parse_arg("--D", D_text);
            if (auto inst = detail::base_instance(D, max_steps, out, code)) {
                FactorAtlas a = enumerate_atlas(*inst, degree);
                if (json) {
                    Json entries = Json::array();
                    for (const auto& e : a.entries)
                        entries.push_back({{"factor", to_string(e.factor)}, {"witnesses", e.witnesses}});
                    detail::emit(out, Json{{"status", "found"},
                                           {"max_degree", a.N},
                                           {"scan_range", a.scan_range},
                                           {"entries", entries},
                                           {"count", a.entries.size()},
                                           {"bound_4n2", a.bound_4n2},
                                           {"bound_10n", a.bound_10n}});
                } else {
                    for (const auto& e : a.entries) {
                        out << to_string(e.factor) << "  @ n =";
                        for (long w : e.witnesses)
                            out << ' ' << w;
                        out << '\n';
                    }
                    out << a.entries.size() << " factors; 4N^2 deg u = " << a.bound_4n2
                        << ", 10N deg u = " << a.bound_10n << '\n';
                }
            }
        } else if (*reproots) {
            const Poly D = detail::parse_arg("--D", D_text);
            if (auto inst = detail::base_instance(D, max_steps, out, code)) {
                RepeatedRootReport r = repeated_roots_report(*inst);
                Json specs = Json::array();
                for (const auto& s : r.specs)
                    specs.push_back({{"p_alpha", to_string(s.p_alpha)},
                                     {"d_alpha", s.d_alpha},
                                     {"k", s.k},
                                     {"n", s.n},
                                     {"cos_min_poly", to_string(s.cos_min_poly, 'x')},
                                     {"multiplicity", s.certified_multiplicity}});
                Json rejected = Json::array();
                for (const auto& p : r.rejected)
                    rejected.push_back(to_string(p));
                detail::emit(out, Json{{"status", "found"},
                                       {"specs", specs},
                                       {"rejected", rejected},
                                       {"degree_sum", r.degree_sum}});
            }
        } else if (*sq) {
            const Poly D = detail::parse_arg("--D", D_text);
            const Poly F = detail::parse_arg("--F", F_text);
            SquareTimesQuery q = is_square_times_pellian(D, F, max_steps);
            Json j;
            switch (q.verdict) {
            case SquareTimesQuery::Verdict::pellian:
                j = Json{{"verdict", "pellian"},
                         {"witness_n", *q.witness_n},
                         {"u", to_string(q.solution->first)},
                         {"v", to_string(q.solution->second)}};
                break;
            case SquareTimesQuery::Verdict::not_pellian:
                j = Json{{"verdict", "not_pellian"}};
                code = negative;
                break;
            case SquareTimesQuery::Verdict::base_not_solved:
                j = Json{{"verdict", "base_not_solved"}};
                code = unknown;
                break;
            }
            detail::emit(out, j);
        } else if (*enumF) {
            const Poly D = detail::parse_arg("--D", D_text);
            try {
                Json factors = Json::array();
                for (const auto& wf : enumerate_square_factors(D, degree, max_steps))
                    factors.push_back({{"factor", to_string(wf.factor)}, {"witness_n", wf.n}});
                detail::emit(out, Json{{"status", "found"}, {"degree", degree}, {"factors", factors}});
            } catch (const base_not_solved_error&) {
                detail::emit(out, Json{{"status", "base_not_solved"}, {"max_steps", max_steps}});
                code = unknown;
            } catch (const not_pellian_error& e) {
                detail::emit(out, Json{{"status", "not_pellian_certified"},
                                       {"reason", detail::not_pellian_reason(e.kind())}});
                code = negative;
            }
        } else if (*verify) {
            auto checks = detail::run_verify(seed);
            bool all = true;
            Json arr = Json::array();
            for (const auto& c : checks) {
                all = all && c.passed;
                arr.push_back({{"check", c.name}, {"cases", c.cases}, {"passed", c.passed}, {"detail", c.detail}});
                if (!json)
                    out << (c.passed ? "ok   " : "FAIL ") << c.name << " (" << c.cases << " cases)"
                        << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
            }
            if (json)
                detail::emit(out, Json{{"seed", seed}, {"passed", all}, {"checks", arr}});
            code = all ? ok : negative;
        }
    } catch (const argument_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const not_pellian_error& e) {
        err << "error: " << e.what() << '\n';
        return negative;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return code;
}

} // namespace pellpoly::cli
