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
 * Fubini-Study metric tensor of a parameterized state and its block
 * approximations, plus the circuit-count model for a training batch.
 *
 *   g_ij = Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>]
 *
 * Derivative states are exact: the generator -i/2 P of the k-th rotation is
 * inserted right after it and the rest of the circuit is replayed. No factor
 * of 4 is applied; the tensor is g itself.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qnpg/ansatz.hpp"
#include "qnpg/policy.hpp"

namespace qnpg {

/// `none` and `identity` exist for the trainer; tensors are only ever
/// built in the other three modes.
enum class MetricMode { none, identity, diagonal, block_diagonal, full };

[[nodiscard]] std::string to_string(MetricMode mode);
[[nodiscard]] MetricMode parse_metric_mode(std::string_view text);

struct MetricTensor {
    Eigen::MatrixXd matrix;
    MetricMode mode{MetricMode::full};
    std::vector<LayerRange> blocks;

    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(matrix.rows());
    }
};

enum class Execution { serial, parallel };

/// |psi> followed by the derivative state of every parameter.
struct DerivativeStates {
    StateVector psi;
    std::vector<StateVector> d_psi;
};

[[nodiscard]] DerivativeStates derivative_states(const CircuitTemplate &tmpl, std::uint64_t state,
                                                 std::span<const double> theta,
                                                 Execution exec = Execution::parallel);

[[nodiscard]] MetricTensor fubini_study(const CircuitTemplate &tmpl, std::uint64_t state,
                                        std::span<const double> theta, MetricMode mode,
                                        Execution exec = Execution::parallel);

[[nodiscard]] MetricTensor fubini_study_full(const CircuitTemplate &tmpl, std::uint64_t state,
                                             std::span<const double> theta);
[[nodiscard]] MetricTensor fubini_study_block_diag(const CircuitTemplate &tmpl,
                                                   std::uint64_t state,
                                                   std::span<const double> theta);
[[nodiscard]] MetricTensor fubini_study_diag(const CircuitTemplate &tmpl, std::uint64_t state,
                                             std::span<const double> theta);

/// Circuits evaluated for one training batch.
struct CircuitBudget {
    std::size_t policy_circuits{0};
    std::size_t gradient_circuits{0};
    std::size_t metric_circuits{0};
    std::size_t total{0};

    bool operator==(const CircuitBudget &) const = default;
};

/**
 * One policy circuit per trajectory, 2|theta| (parameter shift) or
 * 2 * samples (SPSA) gradient circuits per trajectory, and |theta| / n
 * metric circuits per trajectory for the (block-)diagonal approximations.
 *
 * Throws ConfigError when |theta| is not a multiple of n for a metric mode,
 * or for `full`, which has no layered circuit model.
 */
[[nodiscard]] CircuitBudget circuit_budget(std::size_t n_qubits, std::size_t n_params,
                                           std::size_t batch_size, const GradMethod &grad,
                                           MetricMode metric);

} // namespace qnpg
