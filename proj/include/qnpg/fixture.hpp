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
 * Optimal-parameter fixtures for the parity circuits: the plain-text file
 * format, and the two routes that produce a fixture (multi-start exact
 * gradient ascent on the expected reward, and the closed-form optimum of
 * the entangling circuit).
 *
 * File format: `#` comment lines (template name, oracle and tolerance),
 * then one angle in radians per line.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/bandit.hpp"

namespace qnpg {

struct Fixture {
    std::vector<std::string> header; ///< comment lines without the leading '#'
    ParameterVector theta;
};

[[nodiscard]] Fixture parse_fixture(std::istream &in);
/// Throws ConfigError when the file is missing or malformed.
[[nodiscard]] Fixture read_fixture(const std::filesystem::path &path);
void write_fixture(std::ostream &out, const Fixture &fixture);
void write_fixture(const std::filesystem::path &path, const Fixture &fixture);

/// Exact-policy expected-reward gradient by the parameter-shift rule.
[[nodiscard]] std::vector<double> expected_reward_gradient(const CircuitTemplate &tmpl,
                                                           const BanditEnv &env,
                                                           std::span<const double> theta);

struct OptimumSearch {
    std::size_t starts{100};
    std::size_t max_iterations{600};
    double learning_rate{0.05}; ///< Adam step
    double target{0.999};
    std::uint64_t seed{0};
};

struct OptimumResult {
    ParameterVector theta;
    double expected_reward{-1.0};
    std::size_t starts_used{0};
    bool reached_target{false};
};

/**
 * Adam ascent on the exact expected reward from uniform random starts.
 * Stops at the first start that reaches the target; otherwise returns the
 * best end point over all starts.
 */
[[nodiscard]] OptimumResult search_optimum(const CircuitTemplate &tmpl, const BanditEnv &env,
                                           const OptimumSearch &options);

/**
 * Closed-form optimum of the entangling parity circuit: rotation layers one
 * and two at zero, RY(+-pi/2) on even qubits and 0 on odd qubits in layer
 * three. This maps the measured Z-parity back onto the Y-parity of the
 * encoded state. The sign on qubit 0 is chosen so that the expected
 * reward is +1 rather than -1.
 */
[[nodiscard]] ParameterVector entangling_parity_optimum(const CircuitTemplate &tmpl,
                                                        const BanditEnv &env);

} // namespace qnpg
