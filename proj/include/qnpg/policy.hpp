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
 * Parity post-processed policies and their first-order gradients.
 *
 * The action of a measured bitstring is the XOR of its digits. Policies are
 * evaluated either exactly from the Born probabilities or from K shots.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qnpg/ansatz.hpp"
#include "qnpg/rng.hpp"
#include "qnpg/statevector.hpp"

namespace qnpg {

using GradientVector = std::vector<double>;

inline constexpr std::size_t kDefaultShots = 1024;

enum class EvalMode { exact, shots };

struct PolicyDistribution {
    double p0{0.5};
    double p1{0.5};
    [[nodiscard]] double operator[](int action) const { return action == 0 ? p0 : p1; }
};

[[nodiscard]] int parity(const BitString &b);
[[nodiscard]] inline int parity_of_index(std::uint64_t index) {
    return static_cast<int>(__builtin_popcountll(index) & 1);
}

[[nodiscard]] PolicyDistribution exact_policy(const CircuitTemplate &tmpl, std::uint64_t state,
                                              std::span<const double> theta);
[[nodiscard]] PolicyDistribution sampled_policy(const CircuitTemplate &tmpl, std::uint64_t state,
                                                std::span<const double> theta, std::size_t shots,
                                                Rng &rng);

/**
 * Evaluates pi(.|s) for one template in a fixed mode and counts every
 * circuit it runs. All gradient estimators go through an evaluator so
 * circuit usage can be audited.
 */
class PolicyEvaluator {
  public:
    /// `rng` may be null in exact mode.
    PolicyEvaluator(const CircuitTemplate &tmpl, EvalMode mode, std::size_t shots = kDefaultShots,
                    Rng *rng = nullptr);

    PolicyDistribution operator()(std::uint64_t state, std::span<const double> theta);

    [[nodiscard]] const CircuitTemplate &circuit() const noexcept { return *tmpl_; }
    [[nodiscard]] EvalMode mode() const noexcept { return mode_; }
    [[nodiscard]] std::size_t shots() const noexcept { return shots_; }
    [[nodiscard]] std::size_t circuits() const noexcept { return circuits_; }
    void reset_count() noexcept { circuits_ = 0; }

  private:
    const CircuitTemplate *tmpl_;
    EvalMode mode_;
    std::size_t shots_;
    Rng *rng_;
    std::size_t circuits_{0};
};

/// Draw an action from a policy with one uniform variate.
[[nodiscard]] int draw_action(const PolicyDistribution &policy, Rng &rng);

/// Sampled policy from K shots and an action drawn from it.
[[nodiscard]] std::pair<int, PolicyDistribution>
sample_action(const CircuitTemplate &tmpl, std::uint64_t state, std::span<const double> theta,
              std::size_t shots, Rng &rng);

/// Same, using the evaluator's mode (one counted circuit). The evaluator
/// and the action draw share `rng`'s stream when it is the evaluator's.
[[nodiscard]] std::pair<int, PolicyDistribution>
sample_action(PolicyEvaluator &eval, std::uint64_t state, std::span<const double> theta, Rng &rng);

/// d pi(a|s) / d theta_k via the +-pi/2 shift rule; 2|theta| circuits.
[[nodiscard]] GradientVector param_shift_grad(PolicyEvaluator &eval, std::uint64_t state,
                                              std::span<const double> theta, int action);

struct LogPolicyGradient {
    GradientVector values;
    bool clipped{false}; ///< pi(a|s) was below the clip floor
};

/**
 * Chain rule d ln pi = d pi / max(pi, clip). With clip <= 0 the floor is
 * disabled and a zero policy estimate throws DegeneratePolicyError.
 */
[[nodiscard]] LogPolicyGradient log_policy_grad(GradientVector policy_grad, double policy_value,
                                                double clip);

/// Evaluates pi(a|s) and d pi(a|s) with `eval`, then applies the chain rule.
[[nodiscard]] LogPolicyGradient log_policy_grad(PolicyEvaluator &eval, std::uint64_t state,
                                                std::span<const double> theta, int action,
                                                double clip);

/**
 * SPSA estimate of d pi(a|s): mean over `samples` Rademacher directions D of
 * [pi(theta + cD) - pi(theta - cD)] / (2c) * D. 2 * samples circuits.
 */
[[nodiscard]] GradientVector spsa_grad(PolicyEvaluator &eval, std::uint64_t state,
                                       std::span<const double> theta, int action,
                                       std::size_t samples, double c, Rng &perturbation_rng);

/// Central differences of the exact policy. Test oracle.
[[nodiscard]] GradientVector finite_diff_grad(const CircuitTemplate &tmpl, std::uint64_t state,
                                              std::span<const double> theta, int action,
                                              double h = 1e-5);

/// First-order estimator choice and its circuit cost parameters.
struct GradMethod {
    enum class Kind { param_shift, spsa };
    Kind kind{Kind::param_shift};
    std::size_t samples{10}; ///< spsa only
    double c{0.1};           ///< spsa only

    static GradMethod param_shift() { return {}; }
    static GradMethod spsa(std::size_t samples, double c = 0.1) {
        return {Kind::spsa, samples, c};
    }
};

} // namespace qnpg
