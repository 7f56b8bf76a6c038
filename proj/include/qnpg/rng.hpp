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
 * Seeded random source used by the simulator, the environments and the
 * trainers.
 *
 * The engine is std::mt19937_64. Uniform doubles take the top 53 bits of a
 * draw, and Gaussian variates use the basic Box-Muller transform with the
 * second variate of each pair cached. Neither depends on the standard
 * library's distribution classes, so a seed gives the same stream on every
 * platform.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace qnpg {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

/// 64-bit FNV-1a hash.
[[nodiscard]] constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/**
 * Seed splitting rule: stream seed for (master, tag, index) is
 * splitmix64(splitmix64(master ^ fnv1a64(tag)) + index).
 *
 * Streams for different tags or indices are independent of each other, so
 * adding a new agent never changes the stream of an existing one.
 */
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master,
                                                  std::string_view tag,
                                                  std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master ^ fnv1a64(tag)) + index);
}

class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal via Box-Muller.
    double normal();
    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// +1 or -1 with equal probability.
    int rademacher() { return (engine_() >> 63U) != 0U ? 1 : -1; }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

} // namespace qnpg
