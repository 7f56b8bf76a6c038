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
 * Dense statevector simulator for the small gate set used by the ansatz
 * families: H, RX, RY, RZ, PHASE and CX.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qnpg/kernels.hpp"
#include "qnpg/rng.hpp"

namespace qnpg {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 16;

enum class GateKind { H, RX, RY, RZ, PHASE, CX };

[[nodiscard]] std::string to_string(GateKind kind);

/**
 * One gate instance. Rotations follow R_A(t) = exp(-i t A / 2);
 * PHASE(t) = diag(1, e^{it}).
 */
struct Gate {
    GateKind kind{GateKind::H};
    std::size_t target{0};
    std::size_t control{0}; ///< CX only
    double angle{0.0};      ///< ignored for H and CX

    static Gate h(std::size_t q) { return {GateKind::H, q, 0, 0.0}; }
    static Gate rx(std::size_t q, double t) { return {GateKind::RX, q, 0, t}; }
    static Gate ry(std::size_t q, double t) { return {GateKind::RY, q, 0, t}; }
    static Gate rz(std::size_t q, double t) { return {GateKind::RZ, q, 0, t}; }
    static Gate phase(std::size_t q, double t) { return {GateKind::PHASE, q, 0, t}; }
    static Gate cx(std::size_t control, std::size_t target) {
        return {GateKind::CX, target, control, 0.0};
    }

    [[nodiscard]] bool has_angle() const noexcept {
        return kind != GateKind::H && kind != GateKind::CX;
    }
    /// Same gate with the angle negated; H and CX are returned unchanged.
    [[nodiscard]] Gate inverse() const;

    bool operator==(const Gate &) const = default;
};

/// Measured bits, bits[i] is the digit of qubit i.
struct BitString {
    std::vector<std::uint8_t> bits;

    static BitString from_index(std::uint64_t index, std::size_t n_qubits);
    [[nodiscard]] std::uint64_t index() const;
    bool operator==(const BitString &) const = default;
};

class StateVector {
  public:
    /// |0...0> on n_qubits; throws ConfigError outside [1, kMaxQubits].
    explicit StateVector(std::size_t n_qubits);

    /// Takes ownership of given amplitudes; size must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    /// In-place gate application; throws IndexError on bad qubit indices.
    StateVector &apply(const Gate &gate);
    StateVector &apply(std::span<const Gate> gates);

    /// Multiply by -i/2 * P where P is the Pauli generator of a rotation
    /// gate's axis. Used to build derivative states; result is unnormalized.
    StateVector &apply_generator(const Gate &rotation);

    [[nodiscard]] double norm_squared() const;

  private:
    StateVector(std::size_t n_qubits, std::vector<Complex> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

[[nodiscard]] StateVector init_zero(std::size_t n_qubits);
[[nodiscard]] StateVector apply_gate(StateVector state, const Gate &gate);
[[nodiscard]] std::vector<double> probabilities(const StateVector &state);

/// Basis indices drawn from the Born distribution by inverse CDF.
[[nodiscard]] std::vector<std::uint64_t> sample_indices(const StateVector &state,
                                                        std::size_t shots, Rng &rng);
[[nodiscard]] std::vector<BitString> sample_bitstrings(const StateVector &state,
                                                       std::size_t shots, Rng &rng);

/// <a|b>; throws DimensionError on mismatched qubit counts.
[[nodiscard]] Complex inner_product(const StateVector &a, const StateVector &b);

/// 2x2 matrix of a single-qubit gate (not defined for CX).
[[nodiscard]] kernels::Matrix2 gate_matrix(const Gate &gate);

} // namespace qnpg
