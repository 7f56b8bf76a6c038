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
#include "qnpg/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qnpg/errors.hpp"

namespace qnpg {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit(std::size_t q, std::size_t n_qubits) {
    if (q >= n_qubits) {
        throw IndexError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(n_qubits) + " qubits");
    }
}

} // namespace

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::PHASE:
        return "PHASE";
    case GateKind::CX:
        return "CX";
    }
    return "?";
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (has_angle()) {
        g.angle = -angle;
    }
    return g;
}

BitString BitString::from_index(std::uint64_t index, std::size_t n_qubits) {
    BitString b;
    b.bits.resize(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        b.bits[q] = static_cast<std::uint8_t>((index >> (n_qubits - 1 - q)) & 1U);
    }
    return b;
}

std::uint64_t BitString::index() const {
    std::uint64_t idx = 0;
    for (const auto bit : bits) {
        idx = (idx << 1U) | (bit & 1U);
    }
    return idx;
}

kernels::Matrix2 gate_matrix(const Gate &gate) {
    const double c = std::cos(gate.angle / 2.0);
    const double s = std::sin(gate.angle / 2.0);
    switch (gate.kind) {
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        return {Complex{r}, Complex{r}, Complex{r}, Complex{-r}};
    }
    case GateKind::RX:
        return {Complex{c}, -kI * s, -kI * s, Complex{c}};
    case GateKind::RY:
        return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
    case GateKind::RZ:
        return {std::polar(1.0, -gate.angle / 2.0), Complex{}, Complex{},
                std::polar(1.0, gate.angle / 2.0)};
    case GateKind::PHASE:
        return {Complex{1.0}, Complex{}, Complex{}, std::polar(1.0, gate.angle)};
    case GateKind::CX:
        break;
    }
    throw ConfigError("CX has no single-qubit matrix");
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw DimensionError("amplitude count must be a power of two >= 2");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    if (n > kMaxQubits) {
        throw ConfigError("too many qubits");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector &StateVector::apply(const Gate &gate) {
    check_qubit(gate.target, n_qubits_);
    switch (gate.kind) {
    case GateKind::CX:
        check_qubit(gate.control, n_qubits_);
        if (gate.control == gate.target) {
            throw IndexError("CX control equals target");
        }
        kernels::apply_cx(amps_, n_qubits_, gate.control, gate.target);
        break;
    case GateKind::RZ:
    case GateKind::PHASE: {
        const auto m = gate_matrix(gate);
        kernels::apply_diagonal(amps_, n_qubits_, gate.target, m[0], m[3]);
        break;
    }
    default:
        kernels::apply_matrix(amps_, n_qubits_, gate.target, gate_matrix(gate));
        break;
    }
    return *this;
}

StateVector &StateVector::apply(std::span<const Gate> gates) {
    for (const Gate &g : gates) {
        apply(g);
    }
    return *this;
}

StateVector &StateVector::apply_generator(const Gate &rotation) {
    check_qubit(rotation.target, n_qubits_);
    const Complex h = -0.5 * kI;
    switch (rotation.kind) {
    case GateKind::RX:
        kernels::apply_matrix(amps_, n_qubits_, rotation.target, {Complex{}, h, h, Complex{}});
        break;
    case GateKind::RY:
        kernels::apply_matrix(amps_, n_qubits_, rotation.target,
                              {Complex{}, -h * kI, h * kI, Complex{}});
        break;
    case GateKind::RZ:
        kernels::apply_diagonal(amps_, n_qubits_, rotation.target, h, -h);
        break;
    default:
        throw ConfigError("generator requested for non-rotation gate " +
                          to_string(rotation.kind));
    }
    return *this;
}

double StateVector::norm_squared() const {
    return kernels::inner_product(amps_, amps_).real();
}

StateVector init_zero(std::size_t n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> out(state.dimension());
    kernels::probabilities(state.amplitudes(), out);
    return out;
}

std::vector<std::uint64_t> sample_indices(const StateVector &state, std::size_t shots,
                                          Rng &rng) {
    if (shots == 0) {
        throw ConfigError("shots must be >= 1");
    }
    const auto probs = probabilities(state);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    // absorb rounding so that every uniform draw lands in some bin
    const double total = acc;
    std::vector<std::uint64_t> out(shots);
    for (auto &idx : out) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        idx = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    }
    return out;
}

std::vector<BitString> sample_bitstrings(const StateVector &state, std::size_t shots, Rng &rng) {
    const auto indices = sample_indices(state, shots, rng);
    std::vector<BitString> out;
    out.reserve(indices.size());
    for (const auto idx : indices) {
        out.push_back(BitString::from_index(idx, state.n_qubits()));
    }
    return out;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DimensionError("inner product of states with " + std::to_string(a.n_qubits()) +
                             " and " + std::to_string(b.n_qubits()) + " qubits");
    }
    return kernels::inner_product(a.amplitudes(), b.amplitudes());
}

} // namespace qnpg
