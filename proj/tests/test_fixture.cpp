// Copyright 2026 The QNPG Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/bandit.hpp"
#include "qnpg/errors.hpp"
#include "qnpg/fixture.hpp"
#include "qnpg/policy.hpp"

using namespace qnpg;
using Catch::Approx;

namespace {

const std::string kFixtureDir = QNPG_FIXTURE_DIR;

} // namespace

TEST_CASE("fixture files round-trip exactly", "[fixture]") {
    Fixture f;
    f.header = {"template: parity n=2", "oracle: test"};
    f.theta = {0.1, -2.0 / 3.0, 1e-300, 3.141592653589793};
    std::stringstream ss;
    write_fixture(ss, f);
    const Fixture back = parse_fixture(ss);
    CHECK(back.header == f.header);
    CHECK(back.theta == f.theta);
}

TEST_CASE("malformed fixtures are rejected", "[fixture]") {
    std::stringstream bad("# header\n0.5\nnot-a-number\n");
    CHECK_THROWS_AS(parse_fixture(bad), ConfigError);
    CHECK_THROWS_AS(read_fixture(kFixtureDir + "/does_not_exist.txt"), ConfigError);
}

TEST_CASE("shipped fixtures reach the optimum", "[fixture]") {
    SECTION("6 qubits") {
        const auto f = read_fixture(kFixtureDir + "/parity6_optimal.txt");
        const auto tmpl = build_parity_nq(6, true);
        REQUIRE(f.theta.size() == 18);
        const BanditEnv env(6, OptimalRule::parity(), 0);
        CHECK(exact_expected_reward(tmpl, env, f.theta) >= 0.99999);
    }
    SECTION("12 qubits") {
        const auto f = read_fixture(kFixtureDir + "/parity12_optimal.txt");
        const auto tmpl = build_parity_nq(12, true);
        REQUIRE(f.theta.size() == 36);
        const BanditEnv env(12, OptimalRule::parity(), 0);
        // a sample of states is enough here; the acceptance suite enumerates all
        for (std::uint64_t s = 0; s < 4096; s += 97) {
            CHECK(exact_policy(tmpl, s, f.theta)[env.optimal_action(s)] ==
                  Approx(1.0).margin(1e-9));
        }
    }
}

TEST_CASE("closed-form entangling optimum", "[fixture]") {
    for (const std::size_t n : {2U, 4U, 6U}) {
        const auto tmpl = build_parity_nq(n, true);
        const BanditEnv env(n, OptimalRule::parity(), 0);
        const auto theta = entangling_parity_optimum(tmpl, env);
        CHECK(exact_expected_reward(tmpl, env, theta) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("expected-reward gradient matches central differences", "[fixture][oracle]") {
    const auto tmpl = build_parity_nq(2, true);
    const BanditEnv env(2, OptimalRule::parity(), 0);
    std::vector<double> t = {0.3, -0.7, 1.2, 0.4, -1.9, 2.2};
    const auto g = expected_reward_gradient(tmpl, env, t);
    const double h = 1e-5;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double t0 = t[k];
        t[k] = t0 + h;
        const double up = exact_expected_reward(tmpl, env, t);
        t[k] = t0 - h;
        const double down = exact_expected_reward(tmpl, env, t);
        t[k] = t0;
        CHECK(g[k] == Approx((up - down) / (2 * h)).margin(1e-7));
    }
}

TEST_CASE("optimum search on a small parity task", "[fixture]") {
    const auto tmpl = build_parity_nq(2, true);
    const BanditEnv env(2, OptimalRule::parity(), 0);
    OptimumSearch opts;
    opts.starts = 20;
    opts.seed = 4;
    const auto found = search_optimum(tmpl, env, opts);
    CHECK(found.reached_target);
    CHECK(found.expected_reward >= opts.target);
    CHECK(exact_expected_reward(tmpl, env, found.theta) == found.expected_reward);
}
