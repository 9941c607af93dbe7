#include "pellpoly/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace pellpoly;
using cli::Json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json json_of(const Outcome& o)
{
    return Json::parse(o.out);
}

/// Every string value under the given keys re-parses and re-prints unchanged.
void expect_round_trip(const Json& j)
{
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_string() && (key == "u" || key == "v" || key == "poly" || key == "factor" || key == "p_alpha")) {
                const std::string s = value.get<std::string>();
                EXPECT_EQ(to_string(parse_poly(s), s.find('u') != std::string::npos ? 'u' : 't'), s);
            } else {
                expect_round_trip(value);
            }
        }
    } else if (j.is_array()) {
        for (const auto& x : j)
            expect_round_trip(x);
    }
}

class EnvGuard {
public:
    EnvGuard(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
    ~EnvGuard() { ::unsetenv(name_); }
    EnvGuard(const EnvGuard&) = delete;
    EnvGuard& operator=(const EnvGuard&) = delete;

private:
    const char* name_;
};

} // namespace

TEST(Cli, SolveFound)
{
    const Outcome o = run({"solve", "--D", "t^2-1"});
    EXPECT_EQ(o.code, 0);
    const Json j = json_of(o);
    EXPECT_EQ(j["status"], "found");
    EXPECT_EQ(j["u"], "t");
    EXPECT_EQ(j["v"], "1");
}

TEST(Cli, SolveUnknownAndNegative)
{
    const Outcome a = run({"solve", "--D", "t^4+t+1", "--max-steps", "64"});
    EXPECT_EQ(a.code, 2);
    EXPECT_EQ(json_of(a)["status"], "unknown");

    const Outcome b = run({"solve", "--D", "t^3 + 2"});
    EXPECT_EQ(b.code, 1);
    EXPECT_EQ(json_of(b)["status"], "not_pellian_certified");
    EXPECT_EQ(json_of(b)["reason"], "odd_degree");
}

TEST(Cli, UsageErrors)
{
    const Outcome a = run({"solve", "--D", "t^2 + * 1"});
    EXPECT_EQ(a.code, 64);
    EXPECT_NE(a.err.find("--D"), std::string::npos);
    EXPECT_NE(a.err.find("position"), std::string::npos);
    EXPECT_EQ(run({}).code, 64);
    EXPECT_EQ(run({"frobnicate"}).code, 64);
    EXPECT_EQ(run({"solve"}).code, 64);
    EXPECT_EQ(run({"solve", "--D", "t^2-1", "--max-steps", "0"}).code, 64);
    EXPECT_EQ(run({"psi", "--m", "1"}).code, 64);
    EXPECT_EQ(run({"psi", "--m", "4", "--star"}).code, 64);
}

TEST(Cli, Psi)
{
    const Outcome a = run({"psi", "--m", "6"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "4*u^2 - 3");

    const Json j = json_of(run({"psi", "--m", "5", "--json"}));
    EXPECT_EQ(j["poly"], "16*u^4 - 12*u^2 + 1");
    EXPECT_EQ(j["content"], "16");
    EXPECT_EQ(j["factors"].size(), 2u);

    EXPECT_EQ(run({"psi", "--m", "5", "--star"}).out.substr(0, 13), "4*u^2 + 2*u -");
}

TEST(Cli, GenerateNewpartAtlas)
{
    const Json g = json_of(run({"generate", "--D", "t^2 - 1", "--n", "3"}));
    EXPECT_EQ(g["u"], "4*t^3 - 3*t");
    EXPECT_EQ(g["v"], "4*t^2 - 1");
    EXPECT_EQ(json_of(run({"generate", "--D", "t^2 - 1", "--n", "-1"}))["v"], "-1");

    const Json np = json_of(run({"newpart", "--D", "t^4 + t^2", "--n", "3"}));
    EXPECT_EQ(np["poly"], "16*t^4 + 16*t^2 + 3");
    EXPECT_EQ(np["factors"].size(), 2u);

    const Outcome at = run({"atlas", "--D", "t^2 - 1", "--max-degree", "2", "--json"});
    EXPECT_EQ(at.code, 0);
    const Json a = json_of(at);
    EXPECT_EQ(a["count"], 7);
    EXPECT_EQ(a["scan_range"], Json::parse("[1,2,3,4,5,6]"));
    EXPECT_EQ(a["bound_4n2"], 16);

    EXPECT_NE(run({"atlas", "--D", "t^2 - 1", "--max-degree", "1"}).out.find("t + 1/2  @ n = 3"), std::string::npos);
}

TEST(Cli, ReprootsSquareTimesEnumerate)
{
    const Json r = json_of(run({"reproots", "--D", "t^8 - 8t^6 + 24t^4 - 32t^2 + 15"}));
    ASSERT_EQ(r["specs"].size(), 1u);
    EXPECT_EQ(r["specs"][0]["p_alpha"], "t^2 - 2");
    EXPECT_EQ(r["specs"][0]["n"], 2);
    EXPECT_EQ(r["specs"][0]["multiplicity"], 2);
    EXPECT_EQ(r["rejected"], Json::parse("[\"t\"]"));

    const Outcome s = run({"square-times", "--D", "t^2 - 1", "--F", "2t^2 - 1"});
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(json_of(s)["witness_n"], 4);
    const Outcome n = run({"square-times", "--D", "t^2 - 1", "--F", "t^2 + 1"});
    EXPECT_EQ(n.code, 1);
    EXPECT_EQ(json_of(n)["verdict"], "not_pellian");
    EXPECT_EQ(run({"square-times", "--D", "t^2 - 1", "--F", "t + 1"}).code, 64);
    EXPECT_EQ(run({"square-times", "--D", "t^4 + t + 1", "--F", "t", "--max-steps", "4"}).code, 2);

    const Json e = json_of(run({"enumerate-F", "--D", "t^2 - 1", "--degree", "2"}));
    ASSERT_EQ(e["factors"].size(), 4u);
    EXPECT_EQ(e["factors"][0]["factor"], "t^2 - 1/2");
    EXPECT_EQ(e["factors"][0]["witness_n"], 4);
    EXPECT_EQ(e["factors"][3]["witness_n"], 6);
}

TEST(Cli, JsonRoundTrips)
{
    const std::vector<std::vector<std::string>> cmds = {
        {"solve", "--D", "t^8 + 4t^6 + 6t^4 + 5t^2 + 2"},
        {"generate", "--D", "t^4 + t^2", "--n", "5"},
        {"newpart", "--D", "t^2 - 1", "--n", "7"},
        {"atlas", "--D", "t^4 + t^2", "--max-degree", "3", "--json"},
        {"reproots", "--D", "t^8 - 8t^6 + 24t^4 - 32t^2 + 15"},
        {"square-times", "--D", "t^2 - 1", "--F", "t^3 - 3/4 t"},
        {"enumerate-F", "--D", "t^2 - 1", "--degree", "3"},
        {"psi", "--m", "15", "--json"},
    };
    for (const auto& c : cmds) {
        const Outcome o = run(c);
        ASSERT_NE(o.code, 64) << o.err;
        expect_round_trip(json_of(o));
    }
}

TEST(Cli, VerifyIsDeterministic)
{
    const Outcome a = run({"verify", "--seed", "7", "--json"});
    const Outcome b = run({"verify", "--seed", "7", "--json"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    const Json j = json_of(a);
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["checks"].size(), 9u);
    EXPECT_EQ(run({"verify", "--seed", "7"}).out, run({"verify", "--seed", "7"}).out);
}

TEST(Cli, RepeatedRunsAreByteIdentical)
{
    for (const auto& c : std::vector<std::vector<std::string>>{{"atlas", "--D", "t^2 - 1", "--max-degree", "3", "--json"},
                                                              {"enumerate-F", "--D", "t^4 + t^2", "--degree", "2"}})
        EXPECT_EQ(run(c).out, run(c).out);
}

TEST(Cli, MaxStepsEnvironmentDefault)
{
    {
        EnvGuard env("PELL_MAX_STEPS", "5");
        const Json j = json_of(run({"solve", "--D", "t^4 + t + 1"}));
        EXPECT_EQ(j["steps"], 5);
        // An explicit flag wins over the environment.
        EXPECT_EQ(json_of(run({"solve", "--D", "t^4 + t + 1", "--max-steps", "3"}))["steps"], 3);
    }
    {
        EnvGuard env("PELL_MAX_STEPS", "-2");
        EXPECT_EQ(run({"solve", "--D", "t^2 - 1"}).code, 64);
    }
    EXPECT_EQ(json_of(run({"solve", "--D", "t^4 + t + 1"}))["steps"], 64);
}
