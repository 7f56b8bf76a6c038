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
#include "qnpg/metric.hpp"

#include "qnpg/errors.hpp"

namespace qnpg {

namespace {

bool entry_kept(MetricMode mode, std::span<const std::size_t> layer_of, std::size_t i,
                std::size_t j) {
    switch (mode) {
    case MetricMode::full:
        return true;
    case MetricMode::block_diagonal:
        return layer_of[i] == layer_of[j];
    case MetricMode::diagonal:
        return i == j;
    default:
        return false;
    }
}

} // namespace

std::string to_string(MetricMode mode) {
    switch (mode) {
    case MetricMode::none:
        return "none";
    case MetricMode::identity:
        return "identity";
    case MetricMode::diagonal:
        return "diagonal";
    case MetricMode::block_diagonal:
        return "block_diagonal";
    case MetricMode::full:
        return "full";
    }
    return "?";
}

MetricMode parse_metric_mode(std::string_view text) {
    for (const auto mode : {MetricMode::none, MetricMode::identity, MetricMode::diagonal,
                            MetricMode::block_diagonal, MetricMode::full}) {
        if (text == to_string(mode)) {
            return mode;
        }
    }
    throw ConfigError("unknown metric mode '" + std::string(text) + "'");
}

DerivativeStates derivative_states(const CircuitTemplate &tmpl, std::uint64_t state,
                                   std::span<const double> theta, Execution exec) {
    const BoundCircuit circuit = bind(tmpl, state, theta);
    const std::size_t n_params = circuit.param_positions.size();
    const std::span<const Gate> gates = circuit.gates;

    // states right after each parameterized gate
    std::vector<StateVector> prefix;
    prefix.reserve(n_params);
    StateVector psi(circuit.n_qubits);
    std::size_t next = 0;
    for (std::size_t g = 0; g < gates.size(); ++g) {
        psi.apply(gates[g]);
        while (next < n_params && circuit.param_positions[next] == g) {
            prefix.push_back(psi);
            ++next;
        }
    }

    std::vector<StateVector> d_psi(prefix);
    const auto n = static_cast<std::ptrdiff_t>(n_params);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel && n > 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t pos = circuit.param_positions[static_cast<std::size_t>(k)];
        StateVector &d = d_psi[static_cast<std::size_t>(k)];
        d.apply_generator(gates[pos]);
        d.apply(gates.subspan(pos + 1));
    }
    return {std::move(psi), std::move(d_psi)};
}

MetricTensor fubini_study(const CircuitTemplate &tmpl, std::uint64_t state,
                          std::span<const double> theta, MetricMode mode, Execution exec) {
    if (mode != MetricMode::full && mode != MetricMode::block_diagonal &&
        mode != MetricMode::diagonal) {
        throw ConfigError("metric tensor requested in mode " + to_string(mode));
    }
    const DerivativeStates ds = derivative_states(tmpl, state, theta, exec);
    const std::size_t dim = ds.d_psi.size();
    const auto layer_of = tmpl.layer_map();

    std::vector<Complex> overlap_psi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        overlap_psi[i] = inner_product(ds.d_psi[i], ds.psi);
    }

    MetricTensor out;
    out.mode = mode;
    out.blocks = tmpl.layers();
    out.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                       static_cast<Eigen::Index>(dim));
    const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel && n > 1)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i; j < dim; ++j) {
            if (!entry_kept(mode, layer_of, i, j)) {
                continue;
            }
            // <d_i|psi><psi|d_j> with <psi|d_j> = conj(<d_j|psi>)
            const Complex value = inner_product(ds.d_psi[i], ds.d_psi[j]) -
                                  overlap_psi[i] * std::conj(overlap_psi[j]);
            out.matrix(ii, static_cast<Eigen::Index>(j)) = value.real();
            out.matrix(static_cast<Eigen::Index>(j), ii) = value.real();
        }
    }
    return out;
}

MetricTensor fubini_study_full(const CircuitTemplate &tmpl, std::uint64_t state,
                               std::span<const double> theta) {
    return fubini_study(tmpl, state, theta, MetricMode::full);
}

MetricTensor fubini_study_block_diag(const CircuitTemplate &tmpl, std::uint64_t state,
                                     std::span<const double> theta) {
    return fubini_study(tmpl, state, theta, MetricMode::block_diagonal);
}

MetricTensor fubini_study_diag(const CircuitTemplate &tmpl, std::uint64_t state,
                               std::span<const double> theta) {
    return fubini_study(tmpl, state, theta, MetricMode::diagonal);
}

CircuitBudget circuit_budget(std::size_t n_qubits, std::size_t n_params, std::size_t batch_size,
                             const GradMethod &grad, MetricMode metric) {
    if (n_qubits == 0) {
        throw ConfigError("n_qubits must be >= 1");
    }
    CircuitBudget b;
    b.policy_circuits = batch_size;
    b.gradient_circuits = grad.kind == GradMethod::Kind::param_shift
                              ? batch_size * 2 * n_params
                              : batch_size * 2 * grad.samples;
    switch (metric) {
    case MetricMode::none:
    case MetricMode::identity:
        break;
    case MetricMode::diagonal:
    case MetricMode::block_diagonal:
        if (n_params % n_qubits != 0) {
            throw ConfigError("|theta| = " + std::to_string(n_params) +
                              " is not a multiple of n = " + std::to_string(n_qubits));
        }
        b.metric_circuits = batch_size * (n_params / n_qubits);
        break;
    case MetricMode::full:
        throw ConfigError("no layered circuit model for the full metric");
    }
    b.total = b.policy_circuits + b.gradient_circuits + b.metric_circuits;
    return b;
}

} // namespace qnpg
