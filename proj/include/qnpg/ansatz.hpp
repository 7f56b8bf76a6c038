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
 * Parameterized circuit templates and the two ansatz families.
 *
 * A template is an ordered list of slots. Fixed slots hold concrete gates,
 * encoding slots are resolved from one binary digit of the environment
 * state, and parameter slots are Pauli rotations whose angle is a component
 * of the parameter vector. Every parameter belongs to one rotation layer;
 * layers are contiguous index ranges and define the block structure used by
 * the block-diagonal metric.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qnpg/statevector.hpp"

namespace qnpg {

using ParameterVector = std::vector<double>;

enum class Axis { X, Y, Z };

/// Angle applied on a qubit depending on the digit s_i of the state.
struct EncodingRule {
    GateKind kind{GateKind::PHASE};
    double angle_zero{0.0};
    double angle_one{0.0};
};

struct FixedSlot {
    Gate gate;
};
struct EncodingSlot {
    std::size_t qubit;
    EncodingRule rule;
};
struct ParamSlot {
    std::size_t qubit;
    Axis axis;
    std::size_t index;
};
using Slot = std::variant<FixedSlot, EncodingSlot, ParamSlot>;

/// Half-open parameter index range [begin, end).
struct LayerRange {
    std::size_t begin;
    std::size_t end;
    [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
    bool operator==(const LayerRange &) const = default;
};

/// A bound circuit together with the gate position of every parameter.
struct BoundCircuit {
    std::size_t n_qubits{0};
    std::vector<Gate> gates;
    std::vector<std::size_t> param_positions;
};

class CircuitTemplate {
  public:
    CircuitTemplate(std::string name, std::size_t n_qubits);

    CircuitTemplate &add_fixed(const Gate &gate);
    CircuitTemplate &add_encoding(std::size_t qubit, EncodingRule rule);
    /// Appends a rotation slot in `layer` and returns its parameter index.
    /// Layers must be opened in non-decreasing order.
    std::size_t add_param(std::size_t qubit, Axis axis, std::size_t layer);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t parameter_count() const noexcept { return layer_of_.size(); }
    [[nodiscard]] std::size_t state_count() const noexcept { return std::size_t{1} << n_qubits_; }
    [[nodiscard]] std::span<const Slot> slots() const noexcept { return slots_; }
    [[nodiscard]] std::span<const std::size_t> layer_map() const noexcept { return layer_of_; }
    [[nodiscard]] std::vector<LayerRange> layers() const;

  private:
    std::string name_;
    std::size_t n_qubits_;
    std::vector<Slot> slots_;
    std::vector<std::size_t> layer_of_;
};

/// Digit of qubit q in state s (qubit 0 is the most significant digit).
[[nodiscard]] constexpr unsigned state_digit(std::uint64_t s, std::size_t n_qubits,
                                             std::size_t q) noexcept {
    return static_cast<unsigned>((s >> (n_qubits - 1 - q)) & 1U);
}

/**
 * One-qubit bandit circuit H . RZ(phi_s) . RY(t0) . RZ(phi_s) . RY(t1) with
 * phi_s = (2s - 1) pi / 2. Each parameter is its own layer.
 */
[[nodiscard]] CircuitTemplate build_bandit1q();

/**
 * Parity circuit on an even number of qubits: H and PHASE((1 - 2 s_i) pi/2)
 * on every qubit, then RX layer, [CX 0->1, 2->3, ...], RX layer,
 * [CX 1->2, 3->4, ..., (n-1)->0], RY layer. Without entanglement the CX
 * layers are omitted. 3n parameters in three layers.
 *
 * Throws ConfigError for odd or too small n.
 */
[[nodiscard]] CircuitTemplate build_parity_nq(std::size_t n_qubits, bool entangling);

/// Resolve encodings and parameters. Throws DimensionError on a parameter
/// count mismatch and DomainError on a state outside [0, 2^n).
[[nodiscard]] BoundCircuit bind(const CircuitTemplate &tmpl, std::uint64_t state,
                                std::span<const double> theta);

/// Bind and run from |0...0>.
[[nodiscard]] StateVector simulate(const CircuitTemplate &tmpl, std::uint64_t state,
                                   std::span<const double> theta);

/// Layer-1 angles pi/2 and zeros elsewhere: the exact optimum of the
/// entanglement-free parity circuit.
[[nodiscard]] ParameterVector parity_free_optimum(std::size_t n_qubits);

} // namespace qnpg
