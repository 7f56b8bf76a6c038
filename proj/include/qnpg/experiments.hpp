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
 * Config-driven experiment runner. Each experiment computes an in-memory
 * result first and then writes CSV; the `run_*` functions do both and add
 * a `.meta` provenance sidecar next to the CSV.
 *
 * Config files are flat `key = value` text with `#` comments. Unknown keys
 * are rejected. Per-run random streams are derived from the master seed:
 *
 *   training stream  derive_seed(master, agent, seed_index)
 *   environment      derive_seed(master, agent + "/env", seed_index)
 *   initial theta    derive_seed(master, "init", seed_index), shared by all agents
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/bandit.hpp"
#include "qnpg/metric.hpp"
#include "qnpg/trainer.hpp"

namespace qnpg {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentKind { compare, landscape, trajectory, threshold_table };

struct ExperimentConfig {
    ExperimentKind kind{ExperimentKind::compare};
    std::string ansatz{"bandit1q"}; ///< bandit1q | parity | parity_free
    std::size_t qubits{1};
    OptimalRule env_rule{OptimalRule::constant(0)};
    TrainerConfig trainer; ///< shared hyperparameters; metric/ridge set per agent
    std::vector<std::string> agents{"vanilla", "natural", "regularized_natural"};
    std::size_t seeds{1};
    MetricMode natural_metric{MetricMode::block_diagonal};
    double regularized_ridge{1e-3};
    std::string fixture_path; ///< used by near_optimal init and the table
    std::size_t resolution{45};
    std::string theta0{"distorted"}; ///< preset name or comma-separated angles
    std::vector<std::string> table_params{"fixture"};

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

[[nodiscard]] ExperimentConfig parse_config(std::istream &in);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path &path);
/// Canonical `key = value` listing of every setting; parse_config of the
/// echo yields the same config.
[[nodiscard]] std::string echo_config(const ExperimentConfig &config);

[[nodiscard]] CircuitTemplate make_template(const ExperimentConfig &config);
/// Trainer settings for one agent: vanilla, natural or regularized_natural.
[[nodiscard]] TrainerConfig agent_config(const ExperimentConfig &config, std::string_view agent,
                                         std::uint64_t master_seed, std::size_t seed_index);
/// Loads the fixture when the config names one; empty otherwise.
[[nodiscard]] ParameterVector load_fixture_params(const ExperimentConfig &config);

// ---------------------------------------------------------------- compare

struct RunLog {
    std::string agent;
    std::size_t seed_index{0};
    TrainRun run;
};

struct CompareResult {
    std::vector<std::string> agents;
    std::size_t seeds{0};
    std::size_t episodes{0};
    std::vector<RunLog> runs; ///< agent-major, seed ascending
};

struct AggregateRow {
    std::size_t episode{0};
    std::vector<double> mean;  ///< per agent
    std::vector<double> lower; ///< mean - 1 sd, clipped to [-1, 1]
    std::vector<double> upper; ///< mean + 1 sd, clipped to [-1, 1]
};

/// Trains every (agent, seed) pair; pairs run in parallel across threads.
[[nodiscard]] CompareResult compute_compare(const ExperimentConfig &config,
                                            std::uint64_t master_seed);
[[nodiscard]] std::vector<AggregateRow> aggregate(const CompareResult &result);
void write_compare_csv(std::ostream &out, const CompareResult &result);
void write_raw_csv(std::ostream &out, const CompareResult &result);

// -------------------------------------------------------------- landscape

struct LandscapePoint {
    double x;
    double y;
    double z;
};

/// Exact expected reward on a uniform grid over [-pi, pi)^2, x-major.
[[nodiscard]] std::vector<LandscapePoint> compute_landscape(const ExperimentConfig &config);
void write_landscape_csv(std::ostream &out, std::span<const LandscapePoint> grid);

// ------------------------------------------------------------- trajectory

/// Named starts for the 2-parameter landscape.
[[nodiscard]] ParameterVector trajectory_preset(std::string_view name);
/// Preset name or comma-separated angles.
[[nodiscard]] ParameterVector parse_theta0(std::string_view text, std::size_t n_params);

struct TrajectoryResult {
    ParameterVector theta0;
    TrainRun vanilla;
    TrainRun natural;
};

/// One vanilla and one natural agent from the same theta0 and the same seed.
[[nodiscard]] TrajectoryResult compute_trajectory(const ExperimentConfig &config,
                                                  const ParameterVector &theta0,
                                                  std::uint64_t master_seed,
                                                  std::size_t seed_index = 0);
void write_trajectory_csv(std::ostream &out, const TrajectoryResult &result);

// -------------------------------------------------------- threshold table

struct ThresholdRow {
    std::string label;
    std::vector<double> at_least; ///< percent of states with pi(a_opt|s) >= threshold
    double below{0.0};            ///< percent below the smallest threshold
};

[[nodiscard]] const std::vector<double> &table_thresholds();

[[nodiscard]] ThresholdRow threshold_row(const CircuitTemplate &tmpl, const BanditEnv &env,
                                         std::span<const double> theta, std::string label);
[[nodiscard]] std::vector<ThresholdRow> compute_threshold_table(const ExperimentConfig &config);
void write_threshold_csv(std::ostream &out, std::span<const ThresholdRow> rows);

// ----------------------------------------------------------------- budget

struct BudgetRow {
    std::string agent;
    CircuitBudget budget;
};

[[nodiscard]] std::vector<BudgetRow> compute_budget(const ExperimentConfig &config);
void write_budget_csv(std::ostream &out, std::span<const BudgetRow> rows);

// ------------------------------------------------------------------- I/O

/// Writes `<out>.meta`: version, verb, master seed and the config echo.
void write_meta(const std::filesystem::path &out, std::string_view verb,
                const ExperimentConfig &config, std::uint64_t master_seed);

void run_compare(const ExperimentConfig &config, std::uint64_t master_seed,
                 const std::filesystem::path &out, bool raw);
void run_landscape(const ExperimentConfig &config, std::uint64_t master_seed,
                   const std::filesystem::path &out);
void run_trajectory(const ExperimentConfig &config, std::uint64_t master_seed,
                    const std::filesystem::path &out);
void run_threshold_table(const ExperimentConfig &config, std::uint64_t master_seed,
                         const std::filesystem::path &out);
void run_budget(const ExperimentConfig &config, std::uint64_t master_seed,
                const std::filesystem::path &out);

/// Shortest round-trip formatting of a double, the CSV number format.
[[nodiscard]] std::string format_number(double value);

} // namespace qnpg
