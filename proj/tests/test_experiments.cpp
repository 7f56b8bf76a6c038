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

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qnpg/errors.hpp"
#include "qnpg/experiments.hpp"

using namespace qnpg;
using Catch::Approx;

namespace {

const std::string kFixtureDir = QNPG_FIXTURE_DIR;

ExperimentConfig parse(const std::string &text) {
    std::istringstream in(text);
    return parse_config(in);
}

ExperimentConfig small_compare() {
    return parse("kind = compare\n"
                 "ansatz = bandit1q\n"
                 "qubits = 1\n"
                 "agents = vanilla, natural, regularized_natural\n"
                 "seeds = 3\n"
                 "episodes = 20\n");
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

std::string compare_csv(const ExperimentConfig &cfg, std::uint64_t seed) {
    std::ostringstream out;
    write_compare_csv(out, compute_compare(cfg, seed));
    return out.str();
}

} // namespace

TEST_CASE("config parsing, comments and echo round-trip", "[experiments]") {
    const auto cfg = parse("# comment\n"
                           "kind = trajectory   # trailing\n"
                           "ansatz = bandit1q\n"
                           "learning_rate = 0.1\n"
                           "spsa_c = 0.2\n"
                           "theta0 = 0.5, -1\n");
    CHECK(cfg.kind == ExperimentKind::trajectory);
    CHECK(cfg.trainer.learning_rate == 0.1);
    CHECK(cfg.trainer.grad.c == 0.2);
    const std::string echo = echo_config(cfg);
    std::istringstream again(echo);
    CHECK(echo_config(parse_config(again)) == echo);
}

TEST_CASE("config errors", "[experiments]") {
    CHECK_THROWS_AS(parse("bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("seeds 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("seeds = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse("seeds = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("agents = \n"), ConfigError);
    CHECK_THROWS_AS(parse("agents = adam\n"), ConfigError);
    CHECK_THROWS_AS(parse("learning_rate = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse("ansatz = parity\nqubits = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("natural_metric = full\n"), ConfigError);
    CHECK_THROWS_AS(parse("init = near_optimal\n"), ConfigError);
}

TEST_CASE("agent settings", "[experiments]") {
    const auto cfg = small_compare();
    CHECK(agent_config(cfg, "vanilla", 1, 0).metric == MetricMode::none);
    const auto nat = agent_config(cfg, "natural", 1, 0);
    CHECK(nat.metric == MetricMode::block_diagonal);
    CHECK(nat.ridge == 0.0);
    CHECK(agent_config(cfg, "regularized_natural", 1, 0).ridge == 1e-3);
    CHECK(agent_config(cfg, "natural", 1, 0).seed != agent_config(cfg, "natural", 1, 1).seed);
}

TEST_CASE("compare output is byte-identical and thread-count independent", "[experiments]") {
    const auto cfg = small_compare();
    const std::string a = compare_csv(cfg, 11);
    CHECK(a == compare_csv(cfg, 11));
    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    const std::string threaded = compare_csv(cfg, 11);
    omp_set_num_threads(saved);
    CHECK(a == threaded);
    CHECK(a != compare_csv(cfg, 12));
}

TEST_CASE("adding an agent leaves existing runs unchanged", "[experiments]") {
    auto one = small_compare();
    one.agents = {"natural"};
    const auto base = compute_compare(one, 5);
    const auto all = compute_compare(small_compare(), 5);
    for (std::size_t s = 0; s < 3; ++s) {
        CHECK(base.runs[s].run.final == all.runs[3 + s].run.final);
    }
}

TEST_CASE("compare CSV layout and aggregation", "[experiments]") {
    const auto cfg = small_compare();
    const auto result = compute_compare(cfg, 2);
    std::ostringstream csv;
    write_compare_csv(csv, result);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "episode,vanilla,vanilla_var_neg,vanilla_var_pos,natural,natural_var_neg,"
                  "natural_var_pos,regularized_natural,regularized_natural_var_neg,"
                  "regularized_natural_var_pos");

    // recompute mean and bands from the raw per-seed log
    std::ostringstream raw;
    write_raw_csv(raw, result);
    std::istringstream raw_in(raw.str());
    std::getline(raw_in, line);
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> values;
    while (std::getline(raw_in, line)) {
        const auto cells = split(line);
        values[{cells[0], std::stoul(cells[2])}].push_back(std::stod(cells[3]));
    }
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const auto cells = split(line);
        REQUIRE(cells.size() == 10);
        const std::size_t episode = std::stoul(cells[0]);
        CHECK(episode == ++rows);
        for (std::size_t a = 0; a < 3; ++a) {
            const auto &v = values[{cfg.agents[a], episode}];
            REQUIRE(v.size() == 3);
            const double mean = (v[0] + v[1] + v[2]) / 3.0;
            double sq = 0.0;
            for (const double x : v) {
                sq += (x - mean) * (x - mean);
            }
            const double sd = std::sqrt(sq / 2.0);
            const double m = std::stod(cells[1 + 3 * a]);
            const double lo = std::stod(cells[2 + 3 * a]);
            const double hi = std::stod(cells[3 + 3 * a]);
            CHECK(std::abs(m - mean) < 1e-12);
            CHECK(std::abs(lo - std::max(-1.0, mean - sd)) < 1e-12);
            CHECK(std::abs(hi - std::min(1.0, mean + sd)) < 1e-12);
            CHECK(lo <= m);
            CHECK(m <= hi);
            CHECK(lo >= -1.0);
            CHECK(hi <= 1.0);
        }
    }
    CHECK(rows == 20);
}

TEST_CASE("a single seed collapses the bands onto the mean", "[experiments]") {
    auto cfg = small_compare();
    cfg.seeds = 1;
    for (const auto &row : aggregate(compute_compare(cfg, 1))) {
        CHECK(row.lower == row.mean);
        CHECK(row.upper == row.mean);
    }
}

TEST_CASE("landscape grid", "[experiments]") {
    const auto cfg = parse("kind = landscape\nresolution = 45\n");
    const auto grid = compute_landscape(cfg);
    REQUIRE(grid.size() == 45 * 45);
    double best = -2.0;
    for (const auto &p : grid) {
        CHECK(p.z >= -1.0);
        CHECK(p.z <= 1.0);
        CHECK(p.x >= -std::numbers::pi);
        CHECK(p.x < std::numbers::pi);
        best = std::max(best, p.z);
    }
    CHECK(best >= 0.999);
    CHECK(grid.front().x == -std::numbers::pi);
    CHECK(grid[1].x == grid[0].x);
    CHECK(grid[1].y > grid[0].y);
    const auto parity = parse("kind = landscape\nansatz = parity\nqubits = 2\nenv = parity\n");
    CHECK_THROWS_AS(compute_landscape(parity), ConfigError);
}

TEST_CASE("trajectories share their start", "[experiments]") {
    auto cfg = parse("kind = trajectory\nepisodes = 25\n");
    const auto theta0 = parse_theta0("distorted", 2);
    const auto traj = compute_trajectory(cfg, theta0, 3);
    CHECK(traj.vanilla.initial == theta0);
    CHECK(traj.natural.initial == theta0);
    REQUIRE(traj.vanilla.records.size() == 25);
    CHECK(traj.vanilla.records.front().theta.size() == 2);

    std::ostringstream out;
    write_trajectory_csv(out, traj);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "episode,vanilla_theta_0,vanilla_theta_1,vanilla_reward,natural_theta_0,"
                  "natural_theta_1,natural_reward");
    std::getline(in, line);
    CHECK(line.rfind("0,2,-1.35,", 0) == 0);

    CHECK(parse_theta0("0.25, -1", 2) == std::vector<double>{0.25, -1.0});
    CHECK_THROWS_AS(parse_theta0("0.25", 2), DimensionError);
    CHECK_THROWS_AS(parse_theta0("nowhere", 2), ConfigError);
}

TEST_CASE("a constant-policy start is stationary in exact mode", "[experiments]") {
    auto cfg = parse("kind = trajectory\nepisodes = 20\npolicy_mode = exact\n");
    const auto theta0 = parse_theta0("stationary", 2);
    const auto traj = compute_trajectory(cfg, theta0, 1);
    CHECK(traj.vanilla.final == theta0);
    CHECK(traj.natural.final == theta0);
}

TEST_CASE("threshold table examples", "[experiments]") {
    const auto cfg = parse("kind = threshold_table\nansatz = parity_free\nqubits = 4\n"
                           "env = parity\ntable_params = analytic, zeros\n");
    const auto rows = compute_threshold_table(cfg);
    REQUIRE(rows.size() == 2);
    for (const double v : rows[0].at_least) {
        CHECK(v == 100.0);
    }
    CHECK(rows[0].below == 0.0);
    // uniform policy: nothing at >= 0.55, everything at >= 0.45
    CHECK(rows[1].at_least[4] == 0.0);
    CHECK(rows[1].at_least[5] == 100.0);
    for (const auto &row : rows) {
        for (std::size_t i = 1; i < row.at_least.size(); ++i) {
            CHECK(row.at_least[i] >= row.at_least[i - 1]);
        }
        CHECK(row.at_least.back() + row.below == 100.0);
    }
    std::ostringstream out;
    write_threshold_csv(out, rows);
    CHECK(out.str().rfind("label,>=0.95,>=0.85,>=0.75,>=0.65,>=0.55,>=0.45,>=0.35,<0.35\n"
                          "analytic,100,100,100,100,100,100,100,0\n",
                          0) == 0);
}

TEST_CASE("budget verb", "[experiments]") {
    const auto cfg = parse("ansatz = parity\nqubits = 12\nenv = parity\nbatch_size = 10\n"
                           "agents = vanilla, natural\n");
    const auto rows = compute_budget(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].budget.total == 730);
    CHECK(rows[1].budget.total == 760);
}

TEST_CASE("run_* writes the CSV and a provenance sidecar", "[experiments]") {
    const auto dir = std::filesystem::temp_directory_path() / "qnpg_test_out";
    std::filesystem::remove_all(dir);
    auto cfg = small_compare();
    cfg.seeds = 1;
    cfg.trainer.episodes = 3;
    run_compare(cfg, 99, dir / "c.csv", true);
    CHECK(std::filesystem::exists(dir / "c.csv"));
    CHECK(std::filesystem::exists(dir / "c.csv.raw.csv"));
    std::ifstream meta(dir / "c.csv.meta");
    std::stringstream text;
    text << meta.rdbuf();
    CHECK(text.str().find("# master_seed = 99\n") != std::string::npos);
    CHECK(text.str().find(echo_config(cfg)) != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("fixture paths resolve against the config file", "[experiments]") {
    const auto dir = std::filesystem::temp_directory_path() / "qnpg_cfg_test";
    std::filesystem::create_directories(dir);
    std::filesystem::copy_file(kFixtureDir + "/parity6_optimal.txt", dir / "opt.txt",
                               std::filesystem::copy_options::overwrite_existing);
    {
        std::ofstream out(dir / "run.cfg");
        out << "ansatz = parity\nqubits = 6\nenv = parity\ninit = near_optimal\n"
               "fixture = opt.txt\n";
    }
    const auto cfg = load_config(dir / "run.cfg");
    CHECK(load_fixture_params(cfg).size() == 18);
    std::filesystem::remove_all(dir);
}

TEST_CASE("number formatting round-trips", "[experiments]") {
    for (const double x : {0.1, -1.0 / 3.0, 1e-300, 0.0, 1.0}) {
        CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(1.0) == "1");
}
