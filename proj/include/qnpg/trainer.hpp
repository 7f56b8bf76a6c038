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
/**
 * @file
 * Policy-gradient training: the vanilla REINFORCE update and its natural
 * counterpart that preconditions every per-trajectory log-policy gradient
 * with the (block-)diagonal Fubini-Study metric before averaging.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/bandit.hpp"
#include "qnpg/metric.hpp"
#include "qnpg/policy.hpp"
#include "qnpg/rng.hpp"

namespace qnpg {

enum class InitMode { uniform, near_optimal };

struct TrainerConfig {
    double learning_rate{0.01};
    std::size_t batch_size{1};
    double discount{1.0};
    std::size_t shots{kDefaultShots};
    EvalMode policy_mode{EvalMode::shots};
    GradMethod grad{};
    MetricMode metric{MetricMode::none}; ///< none selects the vanilla update
    double ridge{0.0};                   ///< xi; 0 solves by pseudoinverse
    double metric_scale{1.0};            ///< 4.0 gives the QFI convention
    double clip{1e-6};                   ///< floor on pi(a|s) in the chain rule; <= 0 disables
    std::size_t episodes{500};
    InitMode init{InitMode::uniform};
    double init_sigma{0.5};
    ParameterVector fixture; ///< optimum for near_optimal init
    std::uint64_t seed{0};
    std::size_t eval_every{1};  ///< expected-reward cadence in batches
    std::size_t eval_states{0}; ///< 0 evaluates all states, otherwise a fixed random subset
    std::size_t snapshot_every{0}; ///< theta snapshot cadence; 0 never

    /// Throws ConfigError on any out-of-range field.
    void validate() const;
};

struct TrainRecord {
    std::size_t episode{0}; ///< batches completed, starting at 1
    double expected_reward{0.0};
    bool evaluated{false}; ///< false when carried over from the last evaluation
    double mean_raw_reward{0.0};
    ParameterVector theta; ///< empty unless snapshotted
    CircuitBudget circuits;
    std::size_t clip_events{0};
    std::size_t rank_deficient_solves{0};
    double wall_seconds{0.0};
};

using Trajectory = std::vector<Transition>;

/// G_t = sum_{t' >= t} gamma^{t'-t} r_{t'}. Throws ConfigError for gamma outside [0, 1].
[[nodiscard]] std::vector<double> discounted_returns(std::span<const double> rewards,
                                                     double gamma);

/// One collected single-step trajectory with the policy estimate that chose its action.
struct BatchSample {
    Transition transition;
    PolicyDistribution policy;
};

struct StepResult {
    ParameterVector theta;
    TrainRecord record;
};

/**
 * Batch-averaged update direction (1 / (B H)) sum_t d_t G_t for given
 * samples, where d_t is the log-policy gradient (metric none) or the
 * solution of g(theta; s_t) eta = grad ln pi (other modes). Gradient circuits
 * are run on `eval`; `rng` drives SPSA perturbations.
 */
[[nodiscard]] std::vector<double> batch_direction(const CircuitTemplate &tmpl,
                                                  std::span<const double> theta,
                                                  std::span<const BatchSample> samples,
                                                  const TrainerConfig &config,
                                                  PolicyEvaluator &eval, Rng &rng,
                                                  TrainRecord &stats);

/// Natural step; requires config.metric != none.
[[nodiscard]] StepResult qnpg_step(std::span<const double> theta, BanditEnv &env,
                                   const CircuitTemplate &tmpl, const TrainerConfig &config,
                                   Rng &rng);
/// Vanilla step; config.metric is ignored.
[[nodiscard]] StepResult vanilla_step(std::span<const double> theta, BanditEnv &env,
                                      const CircuitTemplate &tmpl, const TrainerConfig &config,
                                      Rng &rng);

[[nodiscard]] ParameterVector init_params(InitMode mode, const CircuitTemplate &tmpl, Rng &rng,
                                          std::span<const double> fixture = {},
                                          double sigma = 0.5);

struct TrainRun {
    ParameterVector initial;
    double initial_reward{0.0};
    ParameterVector final;
    std::vector<TrainRecord> records;
};

/// Runs `episodes` batches from theta0. Agent randomness comes from
/// derive_seed(config.seed, "agent", 0); the environment owns its own stream.
[[nodiscard]] TrainRun train_from(BanditEnv &env, const CircuitTemplate &tmpl,
                                  const TrainerConfig &config, ParameterVector theta0);

/// Initializes with init_params from derive_seed(config.seed, "init", 0), then trains.
[[nodiscard]] std::vector<TrainRecord> train(BanditEnv &env, const CircuitTemplate &tmpl,
                                             const TrainerConfig &config);

} // namespace qnpg
