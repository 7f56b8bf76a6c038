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
#include "qnpg/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include "qnpg/errors.hpp"
#include "qnpg/solver.hpp"

namespace qnpg {

namespace {

using Clock = std::chrono::steady_clock;

void check_sizes(const BanditEnv &env, const CircuitTemplate &tmpl,
                 std::span<const double> theta) {
    if (env.n_qubits() != tmpl.n_qubits()) {
        throw ConfigError("environment has " + std::to_string(env.n_qubits()) +
                          " qubits but template " + tmpl.name() + " has " +
                          std::to_string(tmpl.n_qubits()));
    }
    if (theta.size() != tmpl.parameter_count()) {
        throw DimensionError("parameter vector length " + std::to_string(theta.size()) +
                             " does not match template " + tmpl.name());
    }
}

Eigen::MatrixXd metric_matrix(const CircuitTemplate &tmpl, std::uint64_t state,
                              std::span<const double> theta, const TrainerConfig &config) {
    const auto dim = static_cast<Eigen::Index>(theta.size());
    if (config.metric == MetricMode::identity) {
        return Eigen::MatrixXd::Identity(dim, dim);
    }
    Eigen::MatrixXd g = fubini_study(tmpl, state, theta, config.metric).matrix;
    if (config.metric_scale != 1.0) {
        g *= config.metric_scale;
    }
    return g;
}

StepResult run_step(std::span<const double> theta, BanditEnv &env, const CircuitTemplate &tmpl,
                    const TrainerConfig &config, Rng &rng) {
    const auto start = Clock::now();
    check_sizes(env, tmpl, theta);

    PolicyEvaluator eval(tmpl, config.policy_mode, config.shots, &rng);
    std::vector<BatchSample> samples;
    samples.reserve(config.batch_size);
    double reward_sum = 0.0;
    for (std::size_t b = 0; b < config.batch_size; ++b) {
        const std::uint64_t s = env.sample_state();
        const auto [action, policy] = sample_action(eval, s, theta, rng);
        const double r = env.step(s, action);
        reward_sum += r;
        samples.push_back({{s, action, r}, policy});
    }

    StepResult out;
    TrainRecord &rec = out.record;
    rec.circuits.policy_circuits = eval.circuits();
    eval.reset_count();

    const std::vector<double> direction =
        batch_direction(tmpl, theta, samples, config, eval, rng, rec);
    rec.circuits.gradient_circuits = eval.circuits();
    if (config.metric == MetricMode::diagonal || config.metric == MetricMode::block_diagonal) {
        // one circuit per rotation layer and trajectory
        rec.circuits.metric_circuits =
            config.batch_size * (tmpl.parameter_count() / tmpl.n_qubits());
    }
    rec.circuits.total = rec.circuits.policy_circuits + rec.circuits.gradient_circuits +
                         rec.circuits.metric_circuits;

    out.theta.assign(theta.begin(), theta.end());
    for (std::size_t k = 0; k < out.theta.size(); ++k) {
        out.theta[k] += config.learning_rate * direction[k];
    }
    rec.mean_raw_reward = reward_sum / static_cast<double>(config.batch_size);
    rec.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

} // namespace

void TrainerConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning_rate must be > 0");
    }
    if (batch_size < 1) {
        throw ConfigError("batch_size must be >= 1");
    }
    if (!(discount >= 0.0 && discount <= 1.0)) {
        throw ConfigError("discount must lie in [0, 1]");
    }
    if (policy_mode == EvalMode::shots && shots < 1) {
        throw ConfigError("shots must be >= 1");
    }
    if (grad.kind == GradMethod::Kind::spsa && (grad.samples < 1 || !(grad.c > 0.0))) {
        throw ConfigError("spsa needs samples >= 1 and c > 0");
    }
    if (metric == MetricMode::full) {
        throw ConfigError("the full metric has no circuit model; use diagonal or block_diagonal");
    }
    if (!(ridge >= 0.0)) {
        throw ConfigError("ridge must be >= 0");
    }
    if (!(metric_scale > 0.0)) {
        throw ConfigError("metric_scale must be > 0");
    }
    if (!(init_sigma >= 0.0)) {
        throw ConfigError("init_sigma must be >= 0");
    }
    if (eval_every < 1) {
        throw ConfigError("eval_every must be >= 1");
    }
}

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("discount must lie in [0, 1]");
    }
    std::vector<double> out(rewards.size());
    double running = 0.0;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        running = rewards[t] + gamma * running;
        out[t] = running;
    }
    return out;
}

std::vector<double> batch_direction(const CircuitTemplate &tmpl, std::span<const double> theta,
                                    std::span<const BatchSample> samples,
                                    const TrainerConfig &config, PolicyEvaluator &eval, Rng &rng,
                                    TrainRecord &stats) {
    std::vector<double> direction(theta.size(), 0.0);
    if (samples.empty()) {
        return direction;
    }
    // single-step trajectories: H = 1
    constexpr std::size_t horizon = 1;
    for (const BatchSample &sample : samples) {
        const Transition &tr = sample.transition;
        const double reward = tr.reward;
        const double ret = discounted_returns(std::span(&reward, 1), config.discount)[0];

        GradientVector policy_grad =
            config.grad.kind == GradMethod::Kind::param_shift
                ? param_shift_grad(eval, tr.state, theta, tr.action)
                : spsa_grad(eval, tr.state, theta, tr.action, config.grad.samples, config.grad.c,
                            rng);
        LogPolicyGradient score =
            log_policy_grad(std::move(policy_grad), sample.policy[tr.action], config.clip);
        stats.clip_events += score.clipped ? 1U : 0U;

        std::vector<double> step = std::move(score.values);
        if (config.metric != MetricMode::none) {
            const Eigen::MatrixXd g = metric_matrix(tmpl, tr.state, theta, config);
            NaturalUpdate update = config.ridge > 0.0 ? solve_ridge(g, step, config.ridge)
                                                      : solve_least_squares(g, step);
            stats.rank_deficient_solves += update.rank_deficient ? 1U : 0U;
            step = std::move(update.eta);
        }
        for (std::size_t k = 0; k < direction.size(); ++k) {
            direction[k] += step[k] * ret;
        }
    }
    const double norm = static_cast<double>(samples.size() * horizon);
    for (double &d : direction) {
        d /= norm;
    }
    return direction;
}

StepResult qnpg_step(std::span<const double> theta, BanditEnv &env, const CircuitTemplate &tmpl,
                     const TrainerConfig &config, Rng &rng) {
    if (config.metric == MetricMode::none) {
        throw ConfigError("qnpg_step needs a metric mode other than none");
    }
    return run_step(theta, env, tmpl, config, rng);
}

StepResult vanilla_step(std::span<const double> theta, BanditEnv &env, const CircuitTemplate &tmpl,
                        const TrainerConfig &config, Rng &rng) {
    TrainerConfig plain = config;
    plain.metric = MetricMode::none;
    return run_step(theta, env, tmpl, plain, rng);
}

ParameterVector init_params(InitMode mode, const CircuitTemplate &tmpl, Rng &rng,
                            std::span<const double> fixture, double sigma) {
    ParameterVector theta(tmpl.parameter_count());
    if (mode == InitMode::uniform) {
        for (double &t : theta) {
            t = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
        return theta;
    }
    if (fixture.size() != theta.size()) {
        throw ConfigError("near_optimal init needs a fixture of " +
                          std::to_string(theta.size()) + " angles, got " +
                          std::to_string(fixture.size()));
    }
    for (std::size_t k = 0; k < theta.size(); ++k) {
        theta[k] = fixture[k] + sigma * rng.normal();
    }
    return theta;
}

TrainRun train_from(BanditEnv &env, const CircuitTemplate &tmpl, const TrainerConfig &config,
                    ParameterVector theta0) {
    config.validate();
    check_sizes(env, tmpl, theta0);
    Rng rng(derive_seed(config.seed, "agent", 0));

    std::optional<std::vector<std::uint64_t>> subset;
    if (config.eval_states > 0 && config.eval_states < env.state_count()) {
        // fixed validation states for the whole run, drawn without replacement
        std::vector<std::uint64_t> all(env.state_count());
        std::iota(all.begin(), all.end(), std::uint64_t{0});
        Rng pick(derive_seed(config.seed, "eval", 0));
        for (std::size_t i = 0; i < config.eval_states; ++i) {
            std::swap(all[i], all[i + pick.below(all.size() - i)]);
        }
        all.resize(config.eval_states);
        std::sort(all.begin(), all.end());
        subset = std::move(all);
    }
    const auto evaluate = [&](std::span<const double> theta) {
        if (subset) {
            return exact_expected_reward(tmpl, env, theta, std::span<const std::uint64_t>(*subset));
        }
        return exact_expected_reward(tmpl, env, theta);
    };

    TrainRun run;
    run.initial = theta0;
    run.initial_reward = evaluate(theta0);
    run.records.reserve(config.episodes);
    ParameterVector theta = std::move(theta0);
    double last_reward = run.initial_reward;
    const bool natural = config.metric != MetricMode::none;
    for (std::size_t e = 1; e <= config.episodes; ++e) {
        StepResult step = natural ? qnpg_step(theta, env, tmpl, config, rng)
                                  : vanilla_step(theta, env, tmpl, config, rng);
        theta = std::move(step.theta);
        TrainRecord &rec = step.record;
        rec.episode = e;
        if (e % config.eval_every == 0 || e == config.episodes) {
            last_reward = evaluate(theta);
            rec.evaluated = true;
        }
        rec.expected_reward = last_reward;
        if (config.snapshot_every > 0 && e % config.snapshot_every == 0) {
            rec.theta = theta;
        }
        run.records.push_back(std::move(rec));
    }
    run.final = std::move(theta);
    return run;
}

std::vector<TrainRecord> train(BanditEnv &env, const CircuitTemplate &tmpl,
                               const TrainerConfig &config) {
    config.validate();
    Rng init_rng(derive_seed(config.seed, "init", 0));
    ParameterVector theta0 =
        init_params(config.init, tmpl, init_rng, config.fixture, config.init_sigma);
    return train_from(env, tmpl, config, std::move(theta0)).records;
}

} // namespace qnpg
