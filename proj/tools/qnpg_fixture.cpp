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
// Generates optimal-parameter fixtures for the parity ansatz and verifies
// them by exact enumeration of every input state before writing.
//
//   qnpg_fixture --qubits 6  --method ascent   --out data/fixtures/parity6_optimal.txt
//   qnpg_fixture --qubits 12 --method analytic --out data/fixtures/parity12_optimal.txt

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "qnpg/ansatz.hpp"
#include "qnpg/bandit.hpp"
#include "qnpg/experiments.hpp"
#include "qnpg/fixture.hpp"

namespace {

std::string tolerance_text(double tol) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0e", tol);
    return buf;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal-parameter fixture generator"};
    std::size_t qubits = 6;
    std::string method = "ascent";
    std::string out;
    bool entangling = true;
    qnpg::OptimumSearch search;
    double tolerance = 1e-9;

    app.add_option("--qubits", qubits, "even qubit count")->required();
    app.add_option("--method", method, "ascent | analytic")
        ->check(CLI::IsMember({"ascent", "analytic"}));
    app.add_flag("!--free", entangling, "use the entanglement-free circuit");
    app.add_option("--starts", search.starts, "random starts for ascent");
    app.add_option("--iterations", search.max_iterations, "Adam iterations per start");
    app.add_option("--target", search.target, "expected reward that ends the search");
    app.add_option("--seed", search.seed, "search seed");
    app.add_option("--tolerance", tolerance, "verification tolerance for the analytic optimum");
    app.add_option("--out", out, "fixture path")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        const qnpg::CircuitTemplate tmpl = qnpg::build_parity_nq(qubits, entangling);
        const qnpg::BanditEnv env(qubits, qnpg::OptimalRule::parity(), 0);

        qnpg::Fixture fixture;
        std::string oracle;
        double required = 0.0;
        if (method == "analytic") {
            fixture.theta = entangling ? qnpg::entangling_parity_optimum(tmpl, env)
                                       : qnpg::parity_free_optimum(qubits);
            oracle = "closed-form construction";
            required = 1.0 - tolerance;
        } else {
            const qnpg::OptimumResult found = qnpg::search_optimum(tmpl, env, search);
            std::fprintf(stderr, "search: <r> = %.12f after %zu start(s)\n",
                         found.expected_reward, found.starts_used);
            if (!found.reached_target) {
                std::fprintf(stderr, "qnpg_fixture: search did not reach %.6f\n", search.target);
                return 1;
            }
            fixture.theta = found.theta;
            oracle = "Adam ascent, " + std::to_string(search.starts) + " starts, seed " +
                     std::to_string(search.seed);
            required = search.target;
            tolerance = 1.0 - search.target;
        }

        const double reward = qnpg::exact_expected_reward(tmpl, env, fixture.theta);
        if (!(reward >= required)) {
            std::fprintf(stderr, "qnpg_fixture: verification failed, <r> = %.17g\n", reward);
            return 1;
        }
        fixture.header = {
            "template: " + tmpl.name() + " n=" + std::to_string(qubits) +
                " params=" + std::to_string(tmpl.parameter_count()),
            "oracle: " + oracle,
            "verified: exact <r> over all " + std::to_string(env.state_count()) +
                " states = " + qnpg::format_number(reward) + " (tolerance " +
                tolerance_text(tolerance) + ")",
        };
        qnpg::write_fixture(std::filesystem::path(out), fixture);
        std::printf("%s: <r> = %.17g\n", out.c_str(), reward);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "qnpg_fixture: %s\n", e.what());
        return 2;
    }
    return 0;
}
