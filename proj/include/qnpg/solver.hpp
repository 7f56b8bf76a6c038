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
 * Natural-gradient linear solves g eta = grad.
 */
#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qnpg/metric.hpp"

namespace qnpg {

/// Singular values at or below rcond * sigma_max count as zero.
inline constexpr double kDefaultRcond = 1e-8;
inline constexpr double kDefaultRidge = 1e-3;

struct NaturalUpdate {
    std::vector<double> eta;
    double residual_norm{0.0}; ///< ||g eta - grad||_2
    double regularization{0.0};
    bool rank_deficient{false};
};

/**
 * Minimum-norm least-squares solution (pseudoinverse semantics). Diagonal
 * matrices are solved elementwise, so an identity metric returns `grad`
 * bit for bit. Throws NumericError on non-finite input and DimensionError
 * on mismatched sizes.
 */
[[nodiscard]] NaturalUpdate solve_least_squares(const Eigen::MatrixXd &g,
                                                std::span<const double> grad,
                                                double rcond = kDefaultRcond);
[[nodiscard]] NaturalUpdate solve_least_squares(const MetricTensor &g,
                                                std::span<const double> grad,
                                                double rcond = kDefaultRcond);

/// argmin ||g eta - grad||^2 + xi ||eta||^2 = (g^T g + xi I)^-1 g^T grad.
/// Throws ConfigError for xi <= 0.
[[nodiscard]] NaturalUpdate solve_ridge(const Eigen::MatrixXd &g, std::span<const double> grad,
                                        double xi);
[[nodiscard]] NaturalUpdate solve_ridge(const MetricTensor &g, std::span<const double> grad,
                                        double xi);

} // namespace qnpg
