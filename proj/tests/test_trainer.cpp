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
#include <numbers>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/bandit.hpp"
#include "qnpg/errors.hpp"
#include "qnpg/trainer.hpp"

using namespace qnpg;
using Catch::Approx;

namespace {

TrainerConfig small_config(MetricMode metric, std::uint64_t seed) {
    TrainerConfig c;
    c.metric = metric;
    c.episodes = 30;
    c.seed = seed;
    c.snapshot_every = 1;
    return c;
}

} // namespace

TEST_CASE("discounted returns", "[trainer]") {
    const std::vector<double> r = {1.0, 1.0, 1.0};
    CHECK(discounted_returns(r, 0.5) == std::vector<double>{1.75, 1.5, 1.0});
    CHECK(discounted_returns(r, 1.0) == std::vector<double>{3.0, 2.0, 1.0});
    CHECK(discounted_returns(r, 0.0) == r);
    CHECK_THROWS_AS(discounted_returns(r, 1.5), ConfigError);
}

TEST_CASE("identity metric reproduces the vanilla trajectory bit for bit", "[trainer]") {
    const auto tmpl = build_bandit1q();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        BanditEnv env_v(1, OptimalRule::constant(0), 100 + seed);
        BanditEnv env_i(1, OptimalRule::constant(0), 100 + seed);
        const ParameterVector theta0 = {0.4, -1.0};
        const auto v = train_from(env_v, tmpl, small_config(MetricMode::none, seed), theta0);
        const auto i = train_from(env_i, tmpl, small_config(MetricMode::identity, seed), theta0);
        REQUIRE(v.records.size() == i.records.size());
        for (std::size_t e = 0; e < v.records.size(); ++e) {
            CHECK(v.records[e].theta == i.records[e].theta);
        }
        CHECK(v.final == i.final);
    }
}

TEST_CASE("training is deterministic for a fixed seed", "[trainer]") {
    const auto tmpl = build_parity_nq(2, true);
    auto run = [&] {
        BanditEnv env(2, OptimalRule::parity(), 7);
        auto cfg = small_config(MetricMode::block_diagonal, 3);
        cfg.batch_size = 3;
        return train(env, tmpl, cfg);
    };
    const auto a = run();
    const auto b = run();
    REQUIRE(a.size() == b.size());
    for (std::size_t e = 0; e < a.size(); ++e) {
        CHECK(a[e].theta == b[e].theta);
        CHECK(a[e].expected_reward == b[e].expected_reward);
    }
}

TEST_CASE("records carry episode index, circuits and bounded rewards", "[trainer]") {
    const auto tmpl = build_parity_nq(4, true);
    BanditEnv env(4, OptimalRule::parity(), 1);
    TrainerConfig cfg = small_config(MetricMode::block_diagonal, 5);
    cfg.batch_size = 2;
    cfg.episodes = 12;
    cfg.eval_every = 5;
    const auto records = train(env, tmpl, cfg);
    REQUIRE(records.size() == 12);
    const auto expect = circuit_budget(4, 12, 2, cfg.grad, cfg.metric);
    for (std::size_t e = 0; e < records.size(); ++e) {
        const auto &r = records[e];
        CHECK(r.episode == e + 1);
        CHECK(r.circuits == expect);
        CHECK(r.expected_reward >= -1.0);
        CHECK(r.expected_reward <= 1.0);
        // evaluated at multiples of eval_every and at the final episode
        CHECK(r.evaluated == (r.episode % 5 == 0 || r.episode == 12));
        if (!r.evaluated && e > 0) {
            CHECK(r.expected_reward == records[e - 1].expected_reward);
        }
    }
}

TEST_CASE("vanilla budget excludes metric circuits", "[trainer]") {
    const auto tmpl = build_parity_nq(2, false);
    BanditEnv env(2, OptimalRule::parity(), 1);
    TrainerConfig cfg = small_config(MetricMode::none, 1);
    cfg.batch_size = 4;
    cfg.episodes = 2;
    cfg.grad = GradMethod::spsa(3);
    for (const auto &r : train(env, tmpl, cfg)) {
        CHECK(r.circuits == CircuitBudget{4, 24, 0, 28});
    }
}

TEST_CASE("a zero policy estimate is clipped and counted", "[trainer]") {
    const auto tmpl = build_bandit1q();
    const std::vector<double> theta = {0.1, 0.3};
    TrainerConfig cfg;
    PolicyEvaluator eval(tmpl, EvalMode::exact);
    Rng rng(0);
    TrainRecord stats;
    const std::vector<BatchSample> samples = {{{0, 1, 1.0}, {1.0, 0.0}}};
    const auto dir = batch_direction(tmpl, theta, samples, cfg, eval, rng, stats);
    CHECK(stats.clip_events == 1);
    const auto grad = param_shift_grad(eval, 0, theta, 1);
    CHECK(dir[1] == Approx(grad[1] / 1e-6));
}

TEST_CASE("natural agent climbs the 1-qubit landscape in exact mode", "[trainer]") {
    const auto tmpl = build_bandit1q();
    BanditEnv env(1, OptimalRule::constant(0), 4);
    TrainerConfig cfg;
    cfg.policy_mode = EvalMode::exact;
    cfg.metric = MetricMode::block_diagonal;
    cfg.episodes = 300;
    cfg.learning_rate = 0.05;
    const auto run = train_from(env, tmpl, cfg, {0.0, -1.0});
    CHECK(run.initial_reward == Approx(std::sin(-1.0)));
    CHECK(run.records.back().expected_reward > 0.9);
    // the first parameter does not move the state, the pseudoinverse never touches it
    CHECK(run.final[0] == 0.0);
}

TEST_CASE("initialization modes", "[trainer]") {
    const auto tmpl = build_parity_nq(4, true);
    Rng rng(10);
    const auto u = init_params(InitMode::uniform, tmpl, rng);
    REQUIRE(u.size() == 12);
    for (const double x : u) {
        CHECK(std::abs(x) <= std::numbers::pi);
    }
    const std::vector<double> fixture(12, 1.0);
    double sum = 0.0, sq = 0.0;
    const int reps = 500;
    for (int r = 0; r < reps; ++r) {
        for (const double x : init_params(InitMode::near_optimal, tmpl, rng, fixture, 0.5)) {
            sum += x - 1.0;
            sq += (x - 1.0) * (x - 1.0);
        }
    }
    const double n = 12.0 * reps;
    CHECK(std::abs(sum / n) < 5 * 0.5 / std::sqrt(n));
    CHECK(std::sqrt(sq / n) == Approx(0.5).epsilon(0.05));
    CHECK_THROWS_AS(init_params(InitMode::near_optimal, tmpl, rng), ConfigError);
}

TEST_CASE("trainer configuration validation", "[trainer]") {
    const auto bad = [](auto mutate) {
        TrainerConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](TrainerConfig &c) { c.metric = MetricMode::full; }).validate(),
                    ConfigError);
    CHECK_THROWS_AS(bad([](TrainerConfig &c) { c.batch_size = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](TrainerConfig &c) { c.learning_rate = 0.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](TrainerConfig &c) { c.discount = 1.1; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](TrainerConfig &c) { c.shots = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](TrainerConfig &c) { c.ridge = -1.0; }).validate(), ConfigError);
    CHECK_NOTHROW(TrainerConfig{}.validate());

    const auto tmpl = build_bandit1q();
    BanditEnv env(1, OptimalRule::constant(0), 0);
    Rng rng(0);
    const std::vector<double> theta = {0.0, 0.0};
    CHECK_THROWS_AS(qnpg_step(theta, env, tmpl, TrainerConfig{}, rng), ConfigError);
}
