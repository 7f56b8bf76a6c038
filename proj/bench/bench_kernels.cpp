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
// Serial reference kernels against their OpenMP counterparts. The parallel
// path only engages at 2^11 amplitudes and above; smaller registers measure
// the cost of the threshold check alone.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/kernels.hpp"
#include "qnpg/metric.hpp"
#include "qnpg/rng.hpp"
#include "qnpg/statevector.hpp"

namespace {

using qnpg::Complex;

std::vector<Complex> random_state(std::size_t n) {
    qnpg::Rng rng(1);
    std::vector<Complex> v(std::size_t{1} << n);
    for (auto &a : v) {
        a = {rng.normal(), rng.normal()};
    }
    return v;
}

template <bool Parallel>
void BM_ApplyMatrix(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto amps = random_state(n);
    const auto m = qnpg::gate_matrix(qnpg::Gate::ry(n / 2, 0.37));
    for (auto _ : state) {
        for (std::size_t q = 0; q < n; ++q) {
            if constexpr (Parallel) {
                qnpg::kernels::apply_matrix(amps, n, q, m);
            } else {
                qnpg::kernels::serial::apply_matrix(amps, n, q, m);
            }
        }
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * amps.size()));
}

template <bool Parallel>
void BM_ApplyCx(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto amps = random_state(n);
    for (auto _ : state) {
        for (std::size_t q = 0; q < n; ++q) {
            if constexpr (Parallel) {
                qnpg::kernels::apply_cx(amps, n, q, (q + 1) % n);
            } else {
                qnpg::kernels::serial::apply_cx(amps, n, q, (q + 1) % n);
            }
        }
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * amps.size()));
}

template <bool Parallel>
void BM_InnerProduct(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_state(n);
    const auto b = random_state(n);
    for (auto _ : state) {
        const Complex ip = Parallel ? qnpg::kernels::inner_product(a, b)
                                    : qnpg::kernels::serial::inner_product(a, b);
        benchmark::DoNotOptimize(ip);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

template <qnpg::Execution Exec>
void BM_BlockMetric(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto tmpl = qnpg::build_parity_nq(n, true);
    qnpg::Rng rng(2);
    std::vector<double> theta(tmpl.parameter_count());
    for (auto &t : theta) {
        t = rng.uniform(-3.0, 3.0);
    }
    for (auto _ : state) {
        auto g = qnpg::fubini_study(tmpl, 5, theta, qnpg::MetricMode::block_diagonal, Exec);
        benchmark::DoNotOptimize(g.matrix.data());
    }
}

} // namespace

BENCHMARK(BM_ApplyMatrix<false>)->Name("apply_matrix/serial")->DenseRange(10, 16, 2);
BENCHMARK(BM_ApplyMatrix<true>)->Name("apply_matrix/omp")->DenseRange(10, 16, 2)->UseRealTime();
BENCHMARK(BM_ApplyCx<false>)->Name("apply_cx/serial")->DenseRange(10, 16, 2);
BENCHMARK(BM_ApplyCx<true>)->Name("apply_cx/omp")->DenseRange(10, 16, 2)->UseRealTime();
BENCHMARK(BM_InnerProduct<false>)->Name("inner_product/serial")->DenseRange(10, 16, 2);
BENCHMARK(BM_InnerProduct<true>)->Name("inner_product/omp")->DenseRange(10, 16, 2)->UseRealTime();
BENCHMARK(BM_BlockMetric<qnpg::Execution::serial>)->Name("block_metric/serial")->Arg(8)->Arg(12);
BENCHMARK(BM_BlockMetric<qnpg::Execution::parallel>)
    ->Name("block_metric/omp")
    ->Arg(8)
    ->Arg(12)
    ->UseRealTime();

BENCHMARK_MAIN();
