// Copyright 2026 The ctxprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "ctxprob/cli.hpp"
#include "test_support.hpp"

using namespace ctxprob;
using namespace ctxprob::test;
using nlohmann::json;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CheckExitCodes) {
    EXPECT_EQ(run({"check", fixture("cm_two_state.json")}).code, kExitPass);
    EXPECT_EQ(run({"check", fixture("qubit_additivity.json")}).code, kExitPass);
    EXPECT_EQ(run({"check", fixture("mo2_gpm.json")}).code, kExitCheckFailure);
    EXPECT_EQ(run({"check", fixture("tmump_violation.json")}).code, kExitCheckFailure);
    EXPECT_EQ(run({"check", fixture("tmump_violation.json"), "--depth", "0"}).code, kExitCheckFailure);
    Invocation bad = run({"check", fixture("malformed_unknown_id.json")});
    EXPECT_EQ(bad.code, kExitUsage);
    EXPECT_NE(bad.err.find("/procedures/0/measures/0: unknown property 'X'"), std::string::npos) << bad.err;
    EXPECT_EQ(run({"check"}).code, kExitUsage);
    EXPECT_EQ(run({"check", fixture("cm_two_state.json"), "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitPass);
}

TEST(Cli, MassDeficitIsReported) {
    Invocation r = run({"check", fixture("mass_0_9.json")});
    EXPECT_EQ(r.code, kExitCheckFailure);
    EXPECT_NE(r.out.find("[FAIL] kolmogorov.total_mass"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("deficit"), std::string::npos);
}

TEST(Cli, CheckJsonIsDeterministic) {
    Invocation a = run({"check", fixture("bayes_failure.json"), "--format", "json"});
    Invocation b = run({"check", fixture("bayes_failure.json"), "--format", "json"});
    EXPECT_EQ(a.code, kExitPass);
    EXPECT_EQ(a.out, b.out);
    json j = json::parse(a.out);
    EXPECT_EQ(j["suite"], "check");
    EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, ReportCombinesCheckAndLattice) {
    Invocation r = run({"report", fixture("mo2_gpm.json"), "--format", "json"});
    EXPECT_EQ(r.code, kExitCheckFailure);
    json j = json::parse(r.out);
    EXPECT_EQ(j["suite"], "report");
    bool saw_preorder = false, saw_kolmogorov = false;
    for (const auto &c : j["checks"]) {
        saw_preorder |= c["name"] == "lattice.preorder";
        saw_kolmogorov |= c["name"] == "kolmogorov.total_mass";
    }
    EXPECT_TRUE(saw_preorder);
    EXPECT_TRUE(saw_kolmogorov);
}

TEST(Cli, LatticeCommand) {
    Invocation mo2 = run({"lattice", fixture("mo2_gpm.json")});
    EXPECT_EQ(mo2.code, kExitCheckFailure);
    EXPECT_NE(mo2.out.find("{a, na}: P(join) = 1, sum = 2"), std::string::npos) << mo2.out;
    Invocation plain = run({"lattice", fixture("compat_nontransitive.json")});
    EXPECT_EQ(plain.code, kExitPass);
    EXPECT_NE(plain.out.find("[skip] property_lattice"), std::string::npos) << plain.out;
}

TEST(Cli, EvalValuesAndCases) {
    Invocation self = run({"eval", fixture("cm_two_state.json"), "state(S1)", "state(S1)"});
    EXPECT_EQ(self.code, kExitPass);
    EXPECT_EQ(self.out, "1  case iv\n");
    Invocation band = run({"eval", fixture("band_born.json"), "prop(up,c1)", "state(S_halfpi)", "--format", "json"});
    EXPECT_EQ(band.code, kExitPass);
    json j = json::parse(band.out);
    EXPECT_DOUBLE_EQ(j["value"].get<double>(), 0.5);
    EXPECT_EQ(j["case"], "ii");
    EXPECT_EQ(j["procedure"], "M");
    Invocation bayes = run({"eval", fixture("bayes_failure.json"), "prop(E,c1)", "prop(F,c1)"});
    EXPECT_EQ(bayes.out, "0.625 (5/8)  case i, procedure M\n");
    Invocation chosen = run({"eval", fixture("tmump_violation.json"), "prop(E,c1)", "state(S)", "--procedure", "M2"});
    EXPECT_EQ(chosen.out, "0.375 (3/8)  case ii, procedure M2\n");
}

TEST(Cli, EvalErrors) {
    Invocation mixed = run({"eval", fixture("bayes_failure.json"), "prop(E,c1) & state(S)", "state(S)"});
    EXPECT_EQ(mixed.code, kExitCheckFailure);
    EXPECT_NE(mixed.err.find("case mismatch"), std::string::npos) << mixed.err;
    Invocation null = run({"eval", fixture("tmump_violation.json"), "state(S)", "prop(E,c1)"});
    EXPECT_EQ(null.code, kExitCheckFailure);
    EXPECT_NE(null.err.find("'c2'"), std::string::npos) << null.err;
    Invocation parse = run({"eval", fixture("bayes_failure.json"), "prop(E,c1", "state(S)"});
    EXPECT_EQ(parse.code, kExitUsage);
    EXPECT_NE(parse.err.find("error: A:"), std::string::npos);
    Invocation proc = run({"eval", fixture("bayes_failure.json"), "prop(E,c1)", "state(S)", "--procedure", "Q"});
    EXPECT_EQ(proc.code, kExitUsage);
    Invocation hilbert = run({"eval", fixture("qubit_additivity.json"), "a", "b"});
    EXPECT_EQ(hilbert.code, kExitUsage);
}

TEST(Cli, DemoBorn) {
    Invocation def = run({"demo-born"});
    EXPECT_EQ(def.code, kExitPass);
    EXPECT_NE(def.out.find("all gaps within bound"), std::string::npos);
    Invocation j1 = run({"demo-born", "--theta", "0,pi/3,pi", "--segments", "1000", "--format", "json"});
    Invocation j2 = run({"demo-born", "--theta", "0,pi/3,pi", "--segments", "1000", "--format", "json"});
    EXPECT_EQ(j1.out, j2.out);
    json j = json::parse(j1.out);
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_DOUBLE_EQ(j["rows"][0]["mean"].get<double>(), 1.0);
    EXPECT_NEAR(j["rows"][1]["mean"].get<double>(), 0.75, 1e-3);
    EXPECT_DOUBLE_EQ(j["rows"][2]["mean"].get<double>(), 0.0);
    EXPECT_TRUE(j["within_bound"].get<bool>());
    EXPECT_EQ(run({"demo-born", "--theta", "banana"}).code, kExitUsage);
    EXPECT_EQ(run({"demo-born", "--theta", "4"}).code, kExitUsage);
    EXPECT_EQ(run({"demo-born", "--segments", "0"}).code, kExitUsage);
}

TEST(Cli, BandCheckNamesStates) {
    Invocation r = run({"check", fixture("band_born.json")});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("S_twothirds theta="), std::string::npos) << r.out;
}
