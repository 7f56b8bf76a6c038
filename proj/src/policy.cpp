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
#include "qnpg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <numbers>

#include "qnpg/errors.hpp"

namespace qnpg {

namespace {

constexpr double kShift = std::numbers::pi / 2.0;

void check_action(int action) {
    if (action != 0 && action != 1) {
        throw DomainError("action must be 0 or 1, got " + std::to_string(action));
    }
}

} // namespace

int parity(const BitString &b) {
    unsigned acc = 0;
    for (const auto bit : b.bits) {
        acc ^= bit & 1U;
    }
    return static_cast<int>(acc);
}

PolicyDistribution exact_policy(const CircuitTemplate &tmpl, std::uint64_t state,
                                std::span<const double> theta) {
    const auto probs = probabilities(simulate(tmpl, state, theta));
    PolicyDistribution out{0.0, 0.0};
    for (std::size_t b = 0; b < probs.size(); ++b) {
        (parity_of_index(b) == 0 ? out.p0 : out.p1) += probs[b];
    }
    return out;
}

PolicyDistribution sampled_policy(const CircuitTemplate &tmpl, std::uint64_t state,
                                  std::span<const double> theta, std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw ConfigError("shots must be >= 1");
    }
    // Only the parity of each shot is kept, so the odd count of K shots is
    // Binomial(K, P(odd)); one draw replaces K categorical samples.
    const double odd = exact_policy(tmpl, state, theta).p1;
    std::binomial_distribution<std::uint64_t> count(shots, std::clamp(odd, 0.0, 1.0));
    const std::uint64_t ones = count(rng);
    const double k = static_cast<double>(shots);
    return {static_cast<double>(shots - ones) / k, static_cast<double>(ones) / k};
}

PolicyEvaluator::PolicyEvaluator(const CircuitTemplate &tmpl, EvalMode mode, std::size_t shots,
                                 Rng *rng)
    : tmpl_(&tmpl), mode_(mode), shots_(shots), rng_(rng) {
    if (mode == EvalMode::shots) {
        if (shots == 0) {
            throw ConfigError("shots must be >= 1");
        }
        if (rng == nullptr) {
            throw ConfigError("shot mode needs a random source");
        }
    }
}

PolicyDistribution PolicyEvaluator::operator()(std::uint64_t state,
                                               std::span<const double> theta) {
    ++circuits_;
    if (mode_ == EvalMode::exact) {
        return exact_policy(*tmpl_, state, theta);
    }
    return sampled_policy(*tmpl_, state, theta, shots_, *rng_);
}

int draw_action(const PolicyDistribution &policy, Rng &rng) {
    return rng.uniform() < policy.p1 ? 1 : 0;
}

std::pair<int, PolicyDistribution> sample_action(const CircuitTemplate &tmpl, std::uint64_t state,
                                                 std::span<const double> theta, std::size_t shots,
                                                 Rng &rng) {
    const PolicyDistribution policy = sampled_policy(tmpl, state, theta, shots, rng);
    return {draw_action(policy, rng), policy};
}

std::pair<int, PolicyDistribution> sample_action(PolicyEvaluator &eval, std::uint64_t state,
                                                 std::span<const double> theta, Rng &rng) {
    const PolicyDistribution policy = eval(state, theta);
    return {draw_action(policy, rng), policy};
}

GradientVector param_shift_grad(PolicyEvaluator &eval, std::uint64_t state,
                                std::span<const double> theta, int action) {
    check_action(action);
    GradientVector grad(theta.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted[k] = theta[k] + kShift;
        const double plus = eval(state, shifted)[action];
        shifted[k] = theta[k] - kShift;
        const double minus = eval(state, shifted)[action];
        shifted[k] = theta[k];
        grad[k] = 0.5 * (plus - minus);
    }
    return grad;
}

LogPolicyGradient log_policy_grad(GradientVector policy_grad, double policy_value, double clip) {
    LogPolicyGradient out;
    double denom = policy_value;
    if (clip > 0.0) {
        if (policy_value < clip) {
            denom = clip;
            out.clipped = true;
        }
    } else if (policy_value <= 0.0) {
        throw DegeneratePolicyError("policy estimate is 0 and clipping is disabled");
    }
    for (double &g : policy_grad) {
        g /= denom;
    }
    out.values = std::move(policy_grad);
    return out;
}

LogPolicyGradient log_policy_grad(PolicyEvaluator &eval, std::uint64_t state,
                                  std::span<const double> theta, int action, double clip) {
    check_action(action);
    const double value = eval(state, theta)[action];
    return log_policy_grad(param_shift_grad(eval, state, theta, action), value, clip);
}

GradientVector spsa_grad(PolicyEvaluator &eval, std::uint64_t state,
                         std::span<const double> theta, int action, std::size_t samples, double c,
                         Rng &perturbation_rng) {
    check_action(action);
    if (samples == 0) {
        throw ConfigError("spsa samples must be >= 1");
    }
    if (!(c > 0.0)) {
        throw ConfigError("spsa perturbation c must be > 0");
    }
    const std::size_t dim = theta.size();
    GradientVector grad(dim, 0.0);
    std::vector<double> delta(dim);
    std::vector<double> plus(dim);
    std::vector<double> minus(dim);
    for (std::size_t sample = 0; sample < samples; ++sample) {
        for (std::size_t k = 0; k < dim; ++k) {
            delta[k] = perturbation_rng.rademacher();
            plus[k] = theta[k] + c * delta[k];
            minus[k] = theta[k] - c * delta[k];
        }
        const double diff = (eval(state, plus)[action] - eval(state, minus)[action]) / (2.0 * c);
        // 1 / delta_k == delta_k for +-1 entries
        for (std::size_t k = 0; k < dim; ++k) {
            grad[k] += diff * delta[k];
        }
    }
    for (double &g : grad) {
        g /= static_cast<double>(samples);
    }
    return grad;
}

GradientVector finite_diff_grad(const CircuitTemplate &tmpl, std::uint64_t state,
                                std::span<const double> theta, int action, double h) {
    check_action(action);
    if (!(h > 0.0)) {
        throw ConfigError("finite-difference step must be > 0");
    }
    GradientVector grad(theta.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted[k] = theta[k] + h;
        const double plus = exact_policy(tmpl, state, shifted)[action];
        shifted[k] = theta[k] - h;
        const double minus = exact_policy(tmpl, state, shifted)[action];
        shifted[k] = theta[k];
        grad[k] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

} // namespace qnpg
