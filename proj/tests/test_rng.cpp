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

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "qnpg/rng.hpp"

using namespace qnpg;

TEST_CASE("splitmix64 and fnv1a64 reference values", "[rng]") {
    // published first output of SplitMix64 seeded with 0
    STATIC_REQUIRE(splitmix64(0) == 0xe220a8397b1dcdafULL);
    STATIC_REQUIRE(fnv1a64("") == 0xcbf29ce484222325ULL);
    STATIC_REQUIRE(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    STATIC_REQUIRE(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("derive_seed separates tags and indices", "[rng]") {
    std::set<std::uint64_t> seen;
    for (const char *tag : {"vanilla", "natural", "regularized_natural", "init", "eval"}) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            seen.insert(derive_seed(42, tag, i));
        }
    }
    CHECK(seen.size() == 500);
    CHECK(derive_seed(42, "vanilla", 3) == derive_seed(42, "vanilla", 3));
    CHECK(derive_seed(42, "vanilla", 3) != derive_seed(43, "vanilla", 3));
}

TEST_CASE("Rng is reproducible and matches mt19937_64", "[rng]") {
    Rng a(7), b(7);
    std::mt19937_64 ref(7);
    for (int i = 0; i < 1000; ++i) {
        const auto x = a();
        CHECK(x == b());
        CHECK(x == ref());
    }
}

TEST_CASE("uniform draws lie in [0, 1) with the right moments", "[rng]") {
    Rng rng(1);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    const double mean = sum / n;
    // 5 sigma with sigma = sqrt(1/12 / n)
    CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sq / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("below(n) is uniform over [0, n)", "[rng]") {
    Rng rng(3);
    const std::uint64_t k = 6;
    const int n = 60000;
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
        const auto x = rng.below(k);
        REQUIRE(x < k);
        ++counts[x];
    }
    // chi-square, 5 dof; P(chi2 > 20.5) ~ 1e-3
    double chi2 = 0.0;
    const double expect = static_cast<double>(n) / k;
    for (const int c : counts) {
        chi2 += (c - expect) * (c - expect) / expect;
    }
    CHECK(chi2 < 20.5);
    CHECK(rng.below(1) == 0);
}

TEST_CASE("normal draws have unit variance", "[rng]") {
    Rng rng(11);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(2.0, 3.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean - 2.0) < 5.0 * 3.0 / std::sqrt(n));
    CHECK(std::abs(sd - 3.0) < 0.05 * 3.0);
}

TEST_CASE("rademacher is balanced +-1", "[rng]") {
    Rng rng(5);
    const int n = 40000;
    int sum = 0;
    for (int i = 0; i < n; ++i) {
        const int r = rng.rademacher();
        REQUIRE((r == 1 || r == -1));
        sum += r;
    }
    CHECK(std::abs(sum) < 5.0 * std::sqrt(n));
}
