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
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracle.hpp"
#include "qnpg/errors.hpp"
#include "qnpg/rng.hpp"
#include "qnpg/statevector.hpp"

using namespace qnpg;
using Catch::Approx;

namespace {

double max_diff(const StateVector &sv, const oracle::Vec &ref) {
    double d = 0.0;
    for (std::size_t i = 0; i < sv.dimension(); ++i) {
        d = std::max(d, std::abs(sv[i] - ref(static_cast<Eigen::Index>(i))));
    }
    return d;
}

Gate random_gate(std::size_t n, Rng &rng) {
    const auto q = static_cast<std::size_t>(rng.below(n));
    const double t = rng.uniform(-4.0, 4.0);
    switch (rng.below(n == 1 ? 5 : 6)) {
    case 0:
        return Gate::h(q);
    case 1:
        return Gate::rx(q, t);
    case 2:
        return Gate::ry(q, t);
    case 3:
        return Gate::rz(q, t);
    case 4:
        return Gate::phase(q, t);
    default:
        return Gate::cx(q, (q + 1 + rng.below(n - 1)) % n);
    }
}

} // namespace

TEST_CASE("init_zero is |0...0>", "[statevector]") {
    const auto sv = init_zero(3);
    CHECK(sv.dimension() == 8);
    CHECK(sv[0] == Complex(1.0, 0.0));
    CHECK(sv.norm_squared() == 1.0);
}

TEST_CASE("qubit count is bounded", "[statevector]") {
    CHECK_THROWS_AS(StateVector(0), ConfigError);
    CHECK_THROWS_AS(StateVector(kMaxQubits + 1), ConfigError);
    CHECK_NOTHROW(StateVector(kMaxQubits));
}

TEST_CASE("single-gate examples", "[statevector]") {
    SECTION("H on |0> gives equal amplitudes") {
        const auto sv = apply_gate(init_zero(1), Gate::h(0));
        CHECK(sv[0].real() == Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
        CHECK(sv[1].real() == Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    }
    SECTION("RX(pi) flips to -i|1>") {
        const auto sv = apply_gate(init_zero(1), Gate::rx(0, std::numbers::pi));
        CHECK(std::abs(sv[0]) < 1e-15);
        CHECK(std::abs(sv[1] - Complex(0.0, -1.0)) < 1e-15);
    }
    SECTION("RY(pi/2) probabilities are 1/2") {
        const auto p = probabilities(apply_gate(init_zero(1), Gate::ry(0, std::numbers::pi / 2)));
        CHECK(p[0] == Approx(0.5).margin(1e-15));
        CHECK(p[1] == Approx(0.5).margin(1e-15));
    }
    SECTION("qubit 0 is the most significant bit") {
        const auto sv = apply_gate(init_zero(2), Gate::rx(0, std::numbers::pi));
        CHECK(std::norm(sv[2]) == Approx(1.0));
    }
    SECTION("CX with control set flips the target") {
        auto sv = apply_gate(init_zero(2), Gate::rx(0, std::numbers::pi));
        sv.apply(Gate::cx(0, 1));
        CHECK(std::norm(sv[3]) == Approx(1.0));
    }
    SECTION("out-of-range qubit") {
        auto sv = init_zero(2);
        CHECK_THROWS_AS(sv.apply(Gate::h(2)), IndexError);
        CHECK_THROWS_AS(sv.apply(Gate::cx(1, 1)), IndexError);
    }
}

TEST_CASE("random circuits match the dense-matrix oracle", "[statevector][oracle]") {
    Rng rng(2024);
    for (const std::size_t n : {1U, 2U, 3U, 5U}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Gate> gates;
            for (int k = 0; k < 25; ++k) {
                gates.push_back(random_gate(n, rng));
            }
            StateVector sv(n);
            sv.apply(gates);
            CHECK(max_diff(sv, oracle::run(gates, n)) < 1e-12);
            CHECK(sv.norm_squared() == Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("gate inverse undoes the gate", "[statevector]") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const Gate g = random_gate(3, rng);
        StateVector sv(3);
        sv.apply(Gate::h(0)).apply(Gate::ry(1, 0.3)).apply(Gate::rx(2, 1.1));
        const StateVector before = sv;
        sv.apply(g).apply(g.inverse());
        for (std::size_t i = 0; i < sv.dimension(); ++i) {
            CHECK(std::abs(sv[i] - before[i]) < 1e-14);
        }
    }
}

TEST_CASE("generator application is the rotation derivative", "[statevector]") {
    // d/dt R(t)|phi> = (-i/2 P) R(t)|phi>, checked by central differences
    const double t = 0.7, h = 1e-6;
    for (const auto make : {&Gate::rx, &Gate::ry, &Gate::rz}) {
        StateVector base(2);
        base.apply(Gate::h(0)).apply(Gate::ry(1, 0.4)).apply(Gate::cx(0, 1));
        auto plus = apply_gate(base, make(1, t + h));
        auto minus = apply_gate(base, make(1, t - h));
        auto deriv = apply_gate(base, make(1, t));
        deriv.apply_generator(make(1, t));
        for (std::size_t i = 0; i < 4; ++i) {
            const Complex fd = (plus[i] - minus[i]) / (2.0 * h);
            CHECK(std::abs(deriv[i] - fd) < 1e-8);
        }
    }
}

TEST_CASE("sampling follows the Born rule", "[statevector]") {
    StateVector sv(2);
    sv.apply(Gate::ry(0, 1.0)).apply(Gate::ry(1, 2.0));
    const auto p = probabilities(sv);
    Rng rng(77);
    const std::size_t shots = 100000;
    const auto idx = sample_indices(sv, shots, rng);
    REQUIRE(idx.size() == shots);
    std::vector<double> counts(4, 0.0);
    for (const auto i : idx) {
        ++counts[i];
    }
    for (std::size_t i = 0; i < 4; ++i) {
        const double sigma = std::sqrt(p[i] * (1 - p[i]) / shots);
        CHECK(std::abs(counts[i] / shots - p[i]) < 5.0 * sigma + 1e-12);
    }
    CHECK_THROWS_AS(sample_indices(sv, 0, rng), ConfigError);
}

TEST_CASE("bitstrings round-trip through indices", "[statevector]") {
    for (std::uint64_t i = 0; i < 16; ++i) {
        const auto b = BitString::from_index(i, 4);
        CHECK(b.index() == i);
    }
    CHECK(BitString::from_index(0b1000, 4).bits[0] == 1);
}

TEST_CASE("inner product rejects mismatched dimensions", "[statevector]") {
    CHECK_THROWS_AS(inner_product(StateVector(2), StateVector(3)), DimensionError);
    CHECK(inner_product(StateVector(2), StateVector(2)) == Complex(1.0, 0.0));
}
