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
#include "qnpg/kernels.hpp"

#include <algorithm>
#include <vector>

namespace qnpg::kernels {

namespace {

/// i-th index with a zero inserted at bit position `bit`.
inline std::size_t insert_zero(std::size_t i, std::size_t bit) noexcept {
    const std::size_t low = i & (bit - 1);
    return ((i - low) << 1U) | low;
}

inline std::size_t block_count(std::size_t n) noexcept {
    return (n + kReductionBlock - 1) / kReductionBlock;
}

inline Complex block_dot(std::span<const Complex> a, std::span<const Complex> b,
                         std::size_t block) noexcept {
    const std::size_t begin = block * kReductionBlock;
    const std::size_t end = std::min(a.size(), begin + kReductionBlock);
    Complex acc{0.0, 0.0};
    for (std::size_t k = begin; k < end; ++k) {
        acc += std::conj(a[k]) * b[k];
    }
    return acc;
}

} // namespace

void apply_matrix(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                  const Matrix2 &m) {
    const std::size_t bit = bit_of(n_qubits, target);
    const std::size_t half = amps.size() / 2;
    Complex *data = amps.data();
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = insert_zero(i, bit);
        const std::size_t i1 = i0 | bit;
        const Complex a0 = data[i0];
        const Complex a1 = data[i1];
        data[i0] = m[0] * a0 + m[1] * a1;
        data[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_diagonal(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                    Complex d0, Complex d1) {
    const std::size_t bit = bit_of(n_qubits, target);
    const std::size_t dim = amps.size();
    Complex *data = amps.data();
#pragma omp parallel for if (dim >= kParallelThreshold)
    for (std::size_t i = 0; i < dim; ++i) {
        data[i] *= (i & bit) != 0U ? d1 : d0;
    }
}

void apply_cx(std::span<Complex> amps, std::size_t n_qubits, std::size_t control,
              std::size_t target) {
    const std::size_t cbit = bit_of(n_qubits, control);
    const std::size_t tbit = bit_of(n_qubits, target);
    const std::size_t half = amps.size() / 2;
    Complex *data = amps.data();
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = insert_zero(i, tbit);
        if ((i0 & cbit) != 0U) {
            std::swap(data[i0], data[i0 | tbit]);
        }
    }
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    const std::size_t dim = amps.size();
#pragma omp parallel for if (dim >= kParallelThreshold)
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = std::norm(amps[i]);
    }
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    const std::size_t blocks = block_count(a.size());
    std::vector<Complex> partial(blocks);
#pragma omp parallel for if (a.size() >= kParallelThreshold)
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        partial[blk] = block_dot(a, b, blk);
    }
    Complex total{0.0, 0.0};
    for (const Complex &p : partial) {
        total += p;
    }
    return total;
}

namespace serial {

void apply_matrix(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                  const Matrix2 &m) {
    const std::size_t bit = bit_of(n_qubits, target);
    for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
        if ((i0 & bit) != 0U) {
            continue;
        }
        const std::size_t i1 = i0 | bit;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_diagonal(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                    Complex d0, Complex d1) {
    const std::size_t bit = bit_of(n_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= (i & bit) != 0U ? d1 : d0;
    }
}

void apply_cx(std::span<Complex> amps, std::size_t n_qubits, std::size_t control,
              std::size_t target) {
    const std::size_t cbit = bit_of(n_qubits, control);
    const std::size_t tbit = bit_of(n_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) != 0U && (i & tbit) == 0U) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = std::norm(amps[i]);
    }
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    Complex total{0.0, 0.0};
    for (std::size_t blk = 0; blk < block_count(a.size()); ++blk) {
        total += block_dot(a, b, blk);
    }
    return total;
}

} // namespace serial

} // namespace qnpg::kernels
