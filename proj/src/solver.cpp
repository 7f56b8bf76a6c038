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
#include "qnpg/solver.hpp"

#include <cmath>

#include "qnpg/errors.hpp"

namespace qnpg {

namespace {

void check_inputs(const Eigen::MatrixXd &g, std::span<const double> grad) {
    if (g.rows() != g.cols() || static_cast<std::size_t>(g.rows()) != grad.size()) {
        throw DimensionError("metric is " + std::to_string(g.rows()) + "x" +
                             std::to_string(g.cols()) + " but gradient has " +
                             std::to_string(grad.size()) + " entries");
    }
    if (!g.allFinite()) {
        throw NumericError("metric has non-finite entries");
    }
    for (const double v : grad) {
        if (!std::isfinite(v)) {
            throw NumericError("gradient has non-finite entries");
        }
    }
}

bool is_diagonal(const Eigen::MatrixXd &g) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            if (i != j && g(i, j) != 0.0) {
                return false;
            }
        }
    }
    return true;
}

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

NaturalUpdate finish(const Eigen::MatrixXd &g, std::span<const double> grad, Eigen::VectorXd eta,
                     double xi, bool rank_deficient) {
    NaturalUpdate out;
    out.residual_norm = (g * eta - as_vector(grad)).norm();
    out.eta.assign(eta.data(), eta.data() + eta.size());
    out.regularization = xi;
    out.rank_deficient = rank_deficient;
    return out;
}

} // namespace

NaturalUpdate solve_least_squares(const Eigen::MatrixXd &g, std::span<const double> grad,
                                  double rcond) {
    check_inputs(g, grad);
    const Eigen::Index dim = g.rows();
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(dim);
    if (dim == 0) {
        return finish(g, grad, eta, 0.0, false);
    }
    bool rank_deficient = false;
    if (is_diagonal(g)) {
        const double cutoff = rcond * g.diagonal().cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (std::abs(g(i, i)) > cutoff) {
                eta(i) = grad[static_cast<std::size_t>(i)] / g(i, i);
            } else {
                rank_deficient = true;
            }
        }
        return finish(g, grad, eta, 0.0, rank_deficient);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sigma = svd.singularValues();
    const double cutoff = rcond * sigma(0);
    Eigen::VectorXd coeff = svd.matrixU().transpose() * as_vector(grad);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff) {
            coeff(i) /= sigma(i);
        } else {
            coeff(i) = 0.0;
            rank_deficient = true;
        }
    }
    eta = svd.matrixV() * coeff;
    return finish(g, grad, eta, 0.0, rank_deficient);
}

NaturalUpdate solve_least_squares(const MetricTensor &g, std::span<const double> grad,
                                  double rcond) {
    return solve_least_squares(g.matrix, grad, rcond);
}

NaturalUpdate solve_ridge(const Eigen::MatrixXd &g, std::span<const double> grad, double xi) {
    if (!(xi > 0.0)) {
        throw ConfigError("ridge parameter must be > 0; use solve_least_squares for 0");
    }
    check_inputs(g, grad);
    const Eigen::Index dim = g.rows();
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(dim);
    if (dim == 0) {
        return finish(g, grad, eta, xi, false);
    }
    // sigma / (sigma^2 + xi) along each singular direction
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sigma = svd.singularValues();
    Eigen::VectorXd coeff = svd.matrixU().transpose() * as_vector(grad);
    bool rank_deficient = false;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        coeff(i) *= sigma(i) / (sigma(i) * sigma(i) + xi);
        rank_deficient = rank_deficient || sigma(i) <= kDefaultRcond * sigma(0);
    }
    eta = svd.matrixV() * coeff;
    return finish(g, grad, eta, xi, rank_deficient);
}

NaturalUpdate solve_ridge(const MetricTensor &g, std::span<const double> grad, double xi) {
    return solve_ridge(g.matrix, grad, xi);
}

} // namespace qnpg
