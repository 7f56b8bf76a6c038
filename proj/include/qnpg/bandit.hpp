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
 * Contextual bandit environments over S = {0, ..., 2^n - 1} with two
 * actions, Gaussian rewards N(+1, 1) for the optimal action and N(-1, 1)
 * otherwise, and the exact expected-reward tracking metric.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/policy.hpp"
#include "qnpg/rng.hpp"

namespace qnpg {

struct OptimalRule {
    enum class Kind { constant, parity };
    Kind kind{Kind::constant};
    int action{0}; ///< constant rule only

    static OptimalRule constant(int a) { return {Kind::constant, a}; }
    static OptimalRule parity() { return {Kind::parity, 0}; }
};

[[nodiscard]] std::string to_string(const OptimalRule &rule);
/// "constant0", "constant1" or "parity".
[[nodiscard]] OptimalRule parse_optimal_rule(std::string_view text);

struct Transition {
    std::uint64_t state{0};
    int action{0};
    double reward{0.0};
};

class BanditEnv {
  public:
    BanditEnv(std::size_t n_qubits, OptimalRule rule, std::uint64_t seed,
              double reward_sigma = 1.0);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::uint64_t state_count() const noexcept { return std::uint64_t{1} << n_qubits_; }
    [[nodiscard]] const OptimalRule &rule() const noexcept { return rule_; }
    [[nodiscard]] double reward_sigma() const noexcept { return sigma_; }

    /// Uniform over the state space.
    std::uint64_t sample_state();
    /// Throws DomainError for s out of range.
    [[nodiscard]] int optimal_action(std::uint64_t s) const;
    /// Reward ~ N(+1, sigma) for the optimal action, N(-1, sigma) otherwise.
    double step(std::uint64_t s, int action);

  private:
    std::size_t n_qubits_;
    OptimalRule rule_;
    double sigma_;
    Rng rng_;
};

/// pi(a_opt|s) - pi(not a_opt|s).
[[nodiscard]] double expected_reward_state(const PolicyDistribution &policy, const BanditEnv &env,
                                           std::uint64_t s);

using PolicyFunction = std::function<PolicyDistribution(std::uint64_t)>;

/// Uniform average of expected_reward_state over all states, or over
/// `subset` when given. Throws ConfigError for an empty subset.
[[nodiscard]] double expected_reward_policy(const PolicyFunction &policy, const BanditEnv &env,
                                            std::optional<std::span<const std::uint64_t>> subset = {});

/// Exact-policy expected reward of a template at theta.
[[nodiscard]] double exact_expected_reward(const CircuitTemplate &tmpl, const BanditEnv &env,
                                           std::span<const double> theta,
                                           std::optional<std::span<const std::uint64_t>> subset = {});

} // namespace qnpg
