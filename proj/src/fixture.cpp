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
#include "qnpg/fixture.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qnpg/errors.hpp"

namespace qnpg {

namespace {

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

Fixture parse_fixture(std::istream &in) {
    Fixture f;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t.front() == '#') {
            f.header.push_back(trim(t.substr(1)));
            continue;
        }
        std::istringstream value(t);
        double angle = 0.0;
        value >> angle;
        std::string rest;
        if (value.fail() || (value >> rest) || !std::isfinite(angle)) {
            throw ConfigError("fixture line " + std::to_string(line_no) +
                              " is not a single finite angle: '" + t + "'");
        }
        f.theta.push_back(angle);
    }
    return f;
}

Fixture read_fixture(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open fixture file " + path.string());
    }
    return parse_fixture(in);
}

void write_fixture(std::ostream &out, const Fixture &fixture) {
    for (const auto &h : fixture.header) {
        out << "# " << h << '\n';
    }
    out << std::setprecision(17);
    for (const double angle : fixture.theta) {
        out << angle << '\n';
    }
}

void write_fixture(const std::filesystem::path &path, const Fixture &fixture) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write fixture file " + path.string());
    }
    write_fixture(out, fixture);
}

std::vector<double> expected_reward_gradient(const CircuitTemplate &tmpl, const BanditEnv &env,
                                             std::span<const double> theta) {
    // <r> is linear in the Born probabilities, so the shift rule is exact
    std::vector<double> grad(theta.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted[k] = theta[k] + std::numbers::pi / 2.0;
        const double plus = exact_expected_reward(tmpl, env, shifted);
        shifted[k] = theta[k] - std::numbers::pi / 2.0;
        const double minus = exact_expected_reward(tmpl, env, shifted);
        shifted[k] = theta[k];
        grad[k] = 0.5 * (plus - minus);
    }
    return grad;
}

OptimumResult search_optimum(const CircuitTemplate &tmpl, const BanditEnv &env,
                             const OptimumSearch &options) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    OptimumResult best;
    const std::size_t dim = tmpl.parameter_count();
    for (std::size_t start = 0; start < options.starts; ++start) {
        Rng rng(derive_seed(options.seed, "optimum-start", start));
        ParameterVector theta(dim);
        for (double &t : theta) {
            t = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
        std::vector<double> m(dim, 0.0);
        std::vector<double> v(dim, 0.0);
        double reward = exact_expected_reward(tmpl, env, theta);
        for (std::size_t it = 1; it <= options.max_iterations && reward < options.target; ++it) {
            const auto grad = expected_reward_gradient(tmpl, env, theta);
            const double c1 = 1.0 - std::pow(beta1, static_cast<double>(it));
            const double c2 = 1.0 - std::pow(beta2, static_cast<double>(it));
            for (std::size_t k = 0; k < dim; ++k) {
                m[k] = beta1 * m[k] + (1.0 - beta1) * grad[k];
                v[k] = beta2 * v[k] + (1.0 - beta2) * grad[k] * grad[k];
                theta[k] += options.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps);
            }
            reward = exact_expected_reward(tmpl, env, theta);
        }
        best.starts_used = start + 1;
        if (reward > best.expected_reward) {
            best.expected_reward = reward;
            best.theta = theta;
        }
        if (reward >= options.target) {
            best.reached_target = true;
            break;
        }
    }
    return best;
}

ParameterVector entangling_parity_optimum(const CircuitTemplate &tmpl, const BanditEnv &env) {
    const std::size_t n = tmpl.n_qubits();
    if (tmpl.parameter_count() != 3 * n) {
        throw ConfigError("expected a three-layer parity template");
    }
    ParameterVector theta(3 * n, 0.0);
    for (std::size_t q = 0; q < n; q += 2) {
        theta[2 * n + q] = std::numbers::pi / 2.0;
    }
    if (exact_expected_reward(tmpl, env, theta) < 0.0) {
        theta[2 * n] = -theta[2 * n];
    }
    return theta;
}

} // namespace qnpg
