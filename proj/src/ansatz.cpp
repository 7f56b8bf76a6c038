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
#include "qnpg/ansatz.hpp"

#include <numbers>

#include "qnpg/errors.hpp"

namespace qnpg {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

GateKind rotation_kind(Axis axis) {
    switch (axis) {
    case Axis::X:
        return GateKind::RX;
    case Axis::Y:
        return GateKind::RY;
    case Axis::Z:
        return GateKind::RZ;
    }
    return GateKind::RX;
}

} // namespace

CircuitTemplate::CircuitTemplate(std::string name, std::size_t n_qubits)
    : name_(std::move(name)), n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("template qubit count out of range");
    }
}

CircuitTemplate &CircuitTemplate::add_fixed(const Gate &gate) {
    if (gate.target >= n_qubits_ ||
        (gate.kind == GateKind::CX && (gate.control >= n_qubits_ || gate.control == gate.target))) {
        throw IndexError("fixed gate indices invalid for template");
    }
    slots_.emplace_back(FixedSlot{gate});
    return *this;
}

CircuitTemplate &CircuitTemplate::add_encoding(std::size_t qubit, EncodingRule rule) {
    if (qubit >= n_qubits_) {
        throw IndexError("encoding qubit out of range");
    }
    if (rule.kind == GateKind::H || rule.kind == GateKind::CX) {
        throw ConfigError("encoding rule must be an angle gate");
    }
    slots_.emplace_back(EncodingSlot{qubit, rule});
    return *this;
}

std::size_t CircuitTemplate::add_param(std::size_t qubit, Axis axis, std::size_t layer) {
    if (qubit >= n_qubits_) {
        throw IndexError("parameter qubit out of range");
    }
    if (!layer_of_.empty() && layer < layer_of_.back()) {
        throw ConfigError("rotation layers must be contiguous and non-decreasing");
    }
    const std::size_t index = layer_of_.size();
    layer_of_.push_back(layer);
    slots_.emplace_back(ParamSlot{qubit, axis, index});
    return index;
}

std::vector<LayerRange> CircuitTemplate::layers() const {
    std::vector<LayerRange> out;
    for (std::size_t k = 0; k < layer_of_.size(); ++k) {
        if (k == 0 || layer_of_[k] != layer_of_[k - 1]) {
            out.push_back({k, k + 1});
        } else {
            out.back().end = k + 1;
        }
    }
    return out;
}

CircuitTemplate build_bandit1q() {
    CircuitTemplate t("bandit1q", 1);
    const EncodingRule enc{GateKind::RZ, -kHalfPi, kHalfPi};
    t.add_fixed(Gate::h(0));
    t.add_encoding(0, enc);
    t.add_param(0, Axis::Y, 0);
    t.add_encoding(0, enc);
    t.add_param(0, Axis::Y, 1);
    return t;
}

CircuitTemplate build_parity_nq(std::size_t n_qubits, bool entangling) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw ConfigError("parity circuit needs an even qubit count >= 2, got " +
                          std::to_string(n_qubits));
    }
    CircuitTemplate t(entangling ? "parity" : "parity_free", n_qubits);
    const EncodingRule enc{GateKind::PHASE, kHalfPi, -kHalfPi};
    for (std::size_t q = 0; q < n_qubits; ++q) {
        t.add_fixed(Gate::h(q));
        t.add_encoding(q, enc);
    }
    const auto cx_layer = [&](std::size_t first_control) {
        for (std::size_t c = first_control; c < n_qubits; c += 2) {
            t.add_fixed(Gate::cx(c, (c + 1) % n_qubits));
        }
    };
    for (std::size_t q = 0; q < n_qubits; ++q) {
        t.add_param(q, Axis::X, 0);
    }
    if (entangling) {
        cx_layer(0);
    }
    for (std::size_t q = 0; q < n_qubits; ++q) {
        t.add_param(q, Axis::X, 1);
    }
    if (entangling) {
        cx_layer(1);
    }
    for (std::size_t q = 0; q < n_qubits; ++q) {
        t.add_param(q, Axis::Y, 2);
    }
    return t;
}

BoundCircuit bind(const CircuitTemplate &tmpl, std::uint64_t state,
                  std::span<const double> theta) {
    if (theta.size() != tmpl.parameter_count()) {
        throw DimensionError("template " + tmpl.name() + " expects " +
                             std::to_string(tmpl.parameter_count()) + " parameters, got " +
                             std::to_string(theta.size()));
    }
    if (state >= tmpl.state_count()) {
        throw DomainError("state " + std::to_string(state) + " outside [0, " +
                          std::to_string(tmpl.state_count()) + ")");
    }
    const std::size_t n = tmpl.n_qubits();
    BoundCircuit out;
    out.n_qubits = n;
    out.gates.reserve(tmpl.slots().size());
    out.param_positions.resize(tmpl.parameter_count());
    for (const Slot &slot : tmpl.slots()) {
        if (const auto *fixed = std::get_if<FixedSlot>(&slot)) {
            out.gates.push_back(fixed->gate);
        } else if (const auto *enc = std::get_if<EncodingSlot>(&slot)) {
            const bool one = state_digit(state, n, enc->qubit) != 0U;
            out.gates.push_back(
                {enc->rule.kind, enc->qubit, 0, one ? enc->rule.angle_one : enc->rule.angle_zero});
        } else {
            const auto &p = std::get<ParamSlot>(slot);
            out.param_positions[p.index] = out.gates.size();
            out.gates.push_back({rotation_kind(p.axis), p.qubit, 0, theta[p.index]});
        }
    }
    return out;
}

StateVector simulate(const CircuitTemplate &tmpl, std::uint64_t state,
                     std::span<const double> theta) {
    const BoundCircuit circuit = bind(tmpl, state, theta);
    StateVector psi(tmpl.n_qubits());
    psi.apply(circuit.gates);
    return psi;
}

ParameterVector parity_free_optimum(std::size_t n_qubits) {
    ParameterVector theta(3 * n_qubits, 0.0);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        theta[q] = kHalfPi;
    }
    return theta;
}

} // namespace qnpg
