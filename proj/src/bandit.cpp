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
#include "qnpg/bandit.hpp"

#include <bit>

#include "qnpg/errors.hpp"

namespace qnpg {

std::string to_string(const OptimalRule &rule) {
    if (rule.kind == OptimalRule::Kind::parity) {
        return "parity";
    }
    return "constant" + std::to_string(rule.action);
}

OptimalRule parse_optimal_rule(std::string_view text) {
    if (text == "parity") {
        return OptimalRule::parity();
    }
    if (text == "constant0") {
        return OptimalRule::constant(0);
    }
    if (text == "constant1") {
        return OptimalRule::constant(1);
    }
    throw ConfigError("unknown optimal-action rule '" + std::string(text) + "'");
}

BanditEnv::BanditEnv(std::size_t n_qubits, OptimalRule rule, std::uint64_t seed,
                     double reward_sigma)
    : n_qubits_(n_qubits), rule_(rule), sigma_(reward_sigma), rng_(seed) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("environment qubit count out of range");
    }
    if (rule.kind == OptimalRule::Kind::constant && rule.action != 0 && rule.action != 1) {
        throw ConfigError("constant optimal action must be 0 or 1");
    }
    if (!(reward_sigma >= 0.0)) {
        throw ConfigError("reward sigma must be >= 0");
    }
}

std::uint64_t BanditEnv::sample_state() { return rng_.below(state_count()); }

int BanditEnv::optimal_action(std::uint64_t s) const {
    if (s >= state_count()) {
        throw DomainError("state " + std::to_string(s) + " out of range");
    }
    if (rule_.kind == OptimalRule::Kind::constant) {
        return rule_.action;
    }
    return std::popcount(s) & 1;
}

double BanditEnv::step(std::uint64_t s, int action) {
    if (action != 0 && action != 1) {
        throw DomainError("action must be 0 or 1, got " + std::to_string(action));
    }
    const double mean = action == optimal_action(s) ? 1.0 : -1.0;
    return rng_.normal(mean, sigma_);
}

double expected_reward_state(const PolicyDistribution &policy, const BanditEnv &env,
                             std::uint64_t s) {
    const int best = env.optimal_action(s);
    return policy[best] - policy[1 - best];
}

double expected_reward_policy(const PolicyFunction &policy, const BanditEnv &env,
                              std::optional<std::span<const std::uint64_t>> subset) {
    double total = 0.0;
    if (subset) {
        if (subset->empty()) {
            throw ConfigError("expected reward over an empty state subset");
        }
        for (const auto s : *subset) {
            total += expected_reward_state(policy(s), env, s);
        }
        return total / static_cast<double>(subset->size());
    }
    for (std::uint64_t s = 0; s < env.state_count(); ++s) {
        total += expected_reward_state(policy(s), env, s);
    }
    return total / static_cast<double>(env.state_count());
}

double exact_expected_reward(const CircuitTemplate &tmpl, const BanditEnv &env,
                             std::span<const double> theta,
                             std::optional<std::span<const std::uint64_t>> subset) {
    return expected_reward_policy(
        [&](std::uint64_t s) { return exact_policy(tmpl, s, theta); }, env, subset);
}

} // namespace qnpg
