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
// qnpg: config-driven experiment runner.
//
//   qnpg compare    --config configs/bandit1q_compare.cfg --seed 7 --out out/compare.csv [--raw]
//   qnpg landscape  --config configs/bandit1q_landscape.cfg --out out/landscape.csv
//   qnpg trajectory --config configs/bandit1q_trajectory_distorted.cfg --out out/traj.csv
//   qnpg table      --config configs/parity12_table.cfg --out out/table.csv
//   qnpg budget     --config configs/parity12_compare.cfg
//
// Every CSV gets a `<out>.meta` sidecar holding the version, master seed and
// the parsed config. Exit status: 0 ok, 2 configuration error, 1 run error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "qnpg/errors.hpp"
#include "qnpg/experiments.hpp"

namespace {

struct Options {
    std::string config;
    std::uint64_t seed{0};
    std::string out;
    bool raw{false};
};

CLI::App *add_verb(CLI::App &app, const std::string &name, const std::string &help,
                   Options &opts, bool out_required) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "experiment config file")->required();
    sub->add_option("--seed", opts.seed, "master seed (u64)");
    auto *out = sub->add_option("--out", opts.out, "output CSV path");
    if (out_required) {
        out->required();
    }
    return sub;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum natural policy gradient experiments"};
    app.set_version_flag("--version", std::string(qnpg::kVersion));
    app.require_subcommand(1);

    Options opts;
    CLI::App *compare = add_verb(app, "compare", "train agents over seeds, write mean/band CSV",
                                 opts, true);
    compare->add_flag("--raw", opts.raw, "also write per-seed logs to <out>.raw.csv");
    CLI::App *landscape =
        add_verb(app, "landscape", "exact expected reward on a 2-parameter grid", opts, true);
    CLI::App *trajectory =
        add_verb(app, "trajectory", "vanilla and natural parameter traces from one start", opts,
                 true);
    CLI::App *table = add_verb(app, "table", "policy threshold table over all states", opts, true);
    CLI::App *budget = add_verb(app, "budget", "circuits per episode for each agent", opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const qnpg::ExperimentConfig config = qnpg::load_config(opts.config);
        if (compare->parsed()) {
            qnpg::run_compare(config, opts.seed, opts.out, opts.raw);
        } else if (landscape->parsed()) {
            qnpg::run_landscape(config, opts.seed, opts.out);
        } else if (trajectory->parsed()) {
            qnpg::run_trajectory(config, opts.seed, opts.out);
        } else if (table->parsed()) {
            qnpg::run_threshold_table(config, opts.seed, opts.out);
        } else if (budget->parsed()) {
            if (!opts.out.empty()) {
                qnpg::run_budget(config, opts.seed, opts.out);
            }
            qnpg::write_budget_csv(std::cout, qnpg::compute_budget(config));
        }
    } catch (const std::invalid_argument &e) {
        // ConfigError, DimensionError and friends
        std::fprintf(stderr, "qnpg: configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "qnpg: %s\n", e.what());
        return 1;
    }
    return 0;
}
