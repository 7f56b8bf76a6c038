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
 * Low-level amplitude kernels.
 *
 * Every kernel exists twice: an OpenMP version in `qnpg::kernels` and a
 * plain loop in `qnpg::kernels::serial`. The serial versions are the
 * reference the tests compare against. Per-amplitude arithmetic is the same
 * in both, so gate kernels agree bit for bit; reductions use a fixed block
 * partition so their result does not depend on the thread count either.
 *
 * Qubit q occupies bit (n - 1 - q) of the basis index: qubit 0 is the most
 * significant bit.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace qnpg::kernels {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>; ///< row-major 2x2

/// Registers below this many amplitudes run single threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 11U;

/// Block length of the deterministic reductions.
inline constexpr std::size_t kReductionBlock = 1024;

[[nodiscard]] constexpr std::size_t bit_of(std::size_t n_qubits, std::size_t qubit) noexcept {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

void apply_matrix(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                  const Matrix2 &m);
void apply_diagonal(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                    Complex d0, Complex d1);
void apply_cx(std::span<Complex> amps, std::size_t n_qubits, std::size_t control,
              std::size_t target);
void probabilities(std::span<const Complex> amps, std::span<double> out);
[[nodiscard]] Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

namespace serial {
void apply_matrix(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                  const Matrix2 &m);
void apply_diagonal(std::span<Complex> amps, std::size_t n_qubits, std::size_t target,
                    Complex d0, Complex d1);
void apply_cx(std::span<Complex> amps, std::size_t n_qubits, std::size_t control,
              std::size_t target);
void probabilities(std::span<const Complex> amps, std::span<double> out);
[[nodiscard]] Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
} // namespace serial

} // namespace qnpg::kernels
