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
#include "qnpg/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qnpg/errors.hpp"
#include "qnpg/fixture.hpp"

namespace qnpg {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        std::string item = trim(text.substr(pos, end - pos));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i == 0 ? "" : ",") + items[i];
    }
    return out;
}

double to_double(const std::string &key, const std::string &value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
        throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
    }
    return out;
}

std::uint64_t to_uint(const std::string &key, const std::string &value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("'" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return out;
}

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::compare:
        return "compare";
    case ExperimentKind::landscape:
        return "landscape";
    case ExperimentKind::trajectory:
        return "trajectory";
    case ExperimentKind::threshold_table:
        return "threshold_table";
    }
    return "?";
}

struct KeyHandler {
    std::function<void(ExperimentConfig &, const std::string &key, const std::string &)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

// canonical key order of the echo
const std::vector<std::pair<std::string, KeyHandler>> &key_table() {
    using C = ExperimentConfig;
    using S = const std::string &;
    static const std::vector<std::pair<std::string, KeyHandler>> table = {
        {"kind",
         {[](C &c, S k, S v) {
              for (const auto kind : {ExperimentKind::compare, ExperimentKind::landscape,
                                      ExperimentKind::trajectory, ExperimentKind::threshold_table}) {
                  if (v == kind_name(kind)) {
                      c.kind = kind;
                      return;
                  }
              }
              throw ConfigError("unknown " + k + " '" + v + "'");
          },
          [](const C &c) { return kind_name(c.kind); }}},
        {"ansatz", {[](C &c, S, S v) { c.ansatz = v; }, [](const C &c) { return c.ansatz; }}},
        {"qubits",
         {[](C &c, S k, S v) { c.qubits = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.qubits); }}},
        {"env",
         {[](C &c, S, S v) { c.env_rule = parse_optimal_rule(v); },
          [](const C &c) { return to_string(c.env_rule); }}},
        {"agents",
         {[](C &c, S, S v) { c.agents = split_list(v); },
          [](const C &c) { return join(c.agents); }}},
        {"seeds",
         {[](C &c, S k, S v) { c.seeds = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.seeds); }}},
        {"episodes",
         {[](C &c, S k, S v) { c.trainer.episodes = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.episodes); }}},
        {"learning_rate",
         {[](C &c, S k, S v) { c.trainer.learning_rate = to_double(k, v); },
          [](const C &c) { return format_number(c.trainer.learning_rate); }}},
        {"batch_size",
         {[](C &c, S k, S v) { c.trainer.batch_size = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.batch_size); }}},
        {"discount",
         {[](C &c, S k, S v) { c.trainer.discount = to_double(k, v); },
          [](const C &c) { return format_number(c.trainer.discount); }}},
        {"shots",
         {[](C &c, S k, S v) { c.trainer.shots = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.shots); }}},
        {"policy_mode",
         {[](C &c, S k, S v) {
              if (v == "shots") {
                  c.trainer.policy_mode = EvalMode::shots;
              } else if (v == "exact") {
                  c.trainer.policy_mode = EvalMode::exact;
              } else {
                  throw ConfigError("unknown " + k + " '" + v + "'");
              }
          },
          [](const C &c) {
              return std::string(c.trainer.policy_mode == EvalMode::shots ? "shots" : "exact");
          }}},
        {"grad_method",
         {[](C &c, S k, S v) {
              if (v == "param_shift") {
                  c.trainer.grad.kind = GradMethod::Kind::param_shift;
              } else if (v == "spsa") {
                  c.trainer.grad.kind = GradMethod::Kind::spsa;
              } else {
                  throw ConfigError("unknown " + k + " '" + v + "'");
              }
          },
          [](const C &c) {
              return std::string(c.trainer.grad.kind == GradMethod::Kind::spsa ? "spsa"
                                                                               : "param_shift");
          }}},
        {"spsa_samples",
         {[](C &c, S k, S v) { c.trainer.grad.samples = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.grad.samples); }}},
        {"spsa_c",
         {[](C &c, S k, S v) { c.trainer.grad.c = to_double(k, v); },
          [](const C &c) { return format_number(c.trainer.grad.c); }}},
        {"natural_metric",
         {[](C &c, S, S v) { c.natural_metric = parse_metric_mode(v); },
          [](const C &c) { return to_string(c.natural_metric); }}},
        {"ridge",
         {[](C &c, S k, S v) { c.regularized_ridge = to_double(k, v); },
          [](const C &c) { return format_number(c.regularized_ridge); }}},
        {"metric_scale",
         {[](C &c, S k, S v) { c.trainer.metric_scale = to_double(k, v); },
          [](const C &c) { return format_number(c.trainer.metric_scale); }}},
        {"clip",
         {[](C &c, S k, S v) { c.trainer.clip = to_double(k, v); },
          [](const C &c) { return format_number(c.trainer.clip); }}},
        {"init",
         {[](C &c, S k, S v) {
              if (v == "uniform") {
                  c.trainer.init = InitMode::uniform;
              } else if (v == "near_optimal") {
                  c.trainer.init = InitMode::near_optimal;
              } else {
                  throw ConfigError("unknown " + k + " '" + v + "'");
              }
          },
          [](const C &c) {
              return std::string(c.trainer.init == InitMode::uniform ? "uniform" : "near_optimal");
          }}},
        {"init_sigma",
         {[](C &c, S k, S v) { c.trainer.init_sigma = to_double(k, v); },
          [](const C &c) { return format_number(c.trainer.init_sigma); }}},
        {"fixture",
         {[](C &c, S, S v) { c.fixture_path = v; }, [](const C &c) { return c.fixture_path; }}},
        {"eval_every",
         {[](C &c, S k, S v) { c.trainer.eval_every = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.eval_every); }}},
        {"eval_states",
         {[](C &c, S k, S v) { c.trainer.eval_states = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.eval_states); }}},
        {"snapshot_every",
         {[](C &c, S k, S v) { c.trainer.snapshot_every = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.trainer.snapshot_every); }}},
        {"resolution",
         {[](C &c, S k, S v) { c.resolution = to_uint(k, v); },
          [](const C &c) { return std::to_string(c.resolution); }}},
        {"theta0", {[](C &c, S, S v) { c.theta0 = v; }, [](const C &c) { return c.theta0; }}},
        {"table_params",
         {[](C &c, S, S v) { c.table_params = split_list(v); },
          [](const C &c) { return join(c.table_params); }}},
    };
    return table;
}

const KeyHandler *find_key(const std::string &key) {
    for (const auto &[name, handler] : key_table()) {
        if (name == key) {
            return &handler;
        }
    }
    return nullptr;
}

bool is_known_agent(std::string_view agent) {
    return agent == "vanilla" || agent == "natural" || agent == "regularized_natural";
}

std::filesystem::path sibling(const std::filesystem::path &out, std::string_view suffix) {
    return std::filesystem::path(out.string() + std::string(suffix));
}

template <typename Writer>
void write_file(const std::filesystem::path &path, Writer &&writer) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string() + "; output may be partial");
    }
}

BanditEnv make_env(const ExperimentConfig &config, std::uint64_t seed) {
    return BanditEnv(config.qubits, config.env_rule, seed);
}

double clip_unit(double v) { return std::clamp(v, -1.0, 1.0); }

} // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return {buf, ptr};
}

void ExperimentConfig::validate() const {
    if (ansatz == "bandit1q") {
        if (qubits != 1) {
            throw ConfigError("bandit1q runs on 1 qubit");
        }
    } else if (ansatz == "parity" || ansatz == "parity_free") {
        if (qubits < 2 || qubits % 2 != 0) {
            throw ConfigError("parity ansatz needs an even qubit count >= 2");
        }
    } else {
        throw ConfigError("unknown ansatz '" + ansatz + "'");
    }
    if (qubits > kMaxQubits) {
        throw ConfigError("too many qubits");
    }
    if (agents.empty()) {
        throw ConfigError("at least one agent is required");
    }
    for (const auto &a : agents) {
        if (!is_known_agent(a)) {
            throw ConfigError("unknown agent '" + a + "'");
        }
    }
    if (seeds < 1) {
        throw ConfigError("seeds must be >= 1");
    }
    if (natural_metric != MetricMode::diagonal && natural_metric != MetricMode::block_diagonal &&
        natural_metric != MetricMode::identity) {
        throw ConfigError("natural_metric must be diagonal, block_diagonal or identity");
    }
    if (!(regularized_ridge > 0.0)) {
        throw ConfigError("ridge must be > 0");
    }
    trainer.validate();
    if (trainer.init == InitMode::near_optimal && fixture_path.empty()) {
        throw ConfigError("near_optimal init needs a fixture file");
    }
    if (kind == ExperimentKind::landscape && resolution < 1) {
        throw ConfigError("resolution must be >= 1");
    }
}

ExperimentConfig parse_config(std::istream &in) {
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + " has no '='");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const KeyHandler *handler = find_key(key);
        if (handler == nullptr) {
            throw ConfigError("unknown config key '" + key + "' on line " +
                              std::to_string(line_no));
        }
        handler->set(config, key, value);
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    ExperimentConfig config = parse_config(in);
    // fixture paths are relative to the config file
    if (!config.fixture_path.empty() && std::filesystem::path(config.fixture_path).is_relative()) {
        config.fixture_path = (path.parent_path() / config.fixture_path).lexically_normal().string();
    }
    return config;
}

std::string echo_config(const ExperimentConfig &config) {
    std::string out;
    for (const auto &[key, handler] : key_table()) {
        out += key + " = " + handler.get(config) + "\n";
    }
    return out;
}

CircuitTemplate make_template(const ExperimentConfig &config) {
    if (config.ansatz == "bandit1q") {
        return build_bandit1q();
    }
    return build_parity_nq(config.qubits, config.ansatz == "parity");
}

TrainerConfig agent_config(const ExperimentConfig &config, std::string_view agent,
                           std::uint64_t master_seed, std::size_t seed_index) {
    TrainerConfig t = config.trainer;
    t.seed = derive_seed(master_seed, agent, seed_index);
    if (agent == "vanilla") {
        t.metric = MetricMode::none;
        t.ridge = 0.0;
    } else if (agent == "natural") {
        t.metric = config.natural_metric;
        t.ridge = 0.0;
    } else if (agent == "regularized_natural") {
        t.metric = config.natural_metric;
        t.ridge = config.regularized_ridge;
    } else {
        throw ConfigError("unknown agent '" + std::string(agent) + "'");
    }
    return t;
}

ParameterVector load_fixture_params(const ExperimentConfig &config) {
    if (config.fixture_path.empty()) {
        return {};
    }
    return read_fixture(config.fixture_path).theta;
}

CompareResult compute_compare(const ExperimentConfig &config, std::uint64_t master_seed) {
    config.validate();
    const CircuitTemplate tmpl = make_template(config);
    const ParameterVector fixture = load_fixture_params(config);

    CompareResult result;
    result.agents = config.agents;
    result.seeds = config.seeds;
    result.episodes = config.trainer.episodes;
    result.runs.resize(config.agents.size() * config.seeds);

    const auto jobs = static_cast<std::ptrdiff_t>(result.runs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t job = 0; job < jobs; ++job) {
        try {
            const auto j = static_cast<std::size_t>(job);
            const std::string &agent = config.agents[j / config.seeds];
            const std::size_t seed_index = j % config.seeds;
            Rng init_rng(derive_seed(master_seed, "init", seed_index));
            ParameterVector theta0 = init_params(config.trainer.init, tmpl, init_rng, fixture,
                                                 config.trainer.init_sigma);
            BanditEnv env = make_env(config, derive_seed(master_seed, agent + "/env", seed_index));
            const TrainerConfig tc = agent_config(config, agent, master_seed, seed_index);
            result.runs[j] = {agent, seed_index, train_from(env, tmpl, tc, std::move(theta0))};
        } catch (...) {
#pragma omp critical(qnpg_compare_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

std::vector<AggregateRow> aggregate(const CompareResult &result) {
    std::vector<AggregateRow> rows(result.episodes);
    const std::size_t n_agents = result.agents.size();
    for (std::size_t e = 0; e < result.episodes; ++e) {
        AggregateRow &row = rows[e];
        row.episode = e + 1;
        for (std::size_t a = 0; a < n_agents; ++a) {
            double sum = 0.0;
            for (std::size_t s = 0; s < result.seeds; ++s) {
                sum += result.runs[a * result.seeds + s].run.records[e].expected_reward;
            }
            const double mean = sum / static_cast<double>(result.seeds);
            double sq = 0.0;
            for (std::size_t s = 0; s < result.seeds; ++s) {
                const double d =
                    result.runs[a * result.seeds + s].run.records[e].expected_reward - mean;
                sq += d * d;
            }
            const double sd =
                result.seeds > 1 ? std::sqrt(sq / static_cast<double>(result.seeds - 1)) : 0.0;
            row.mean.push_back(mean);
            row.lower.push_back(clip_unit(mean - sd));
            row.upper.push_back(clip_unit(mean + sd));
        }
    }
    return rows;
}

void write_compare_csv(std::ostream &out, const CompareResult &result) {
    out << "episode";
    for (const auto &agent : result.agents) {
        out << ',' << agent << ',' << agent << "_var_neg," << agent << "_var_pos";
    }
    out << '\n';
    for (const auto &row : aggregate(result)) {
        out << row.episode;
        for (std::size_t a = 0; a < row.mean.size(); ++a) {
            out << ',' << format_number(row.mean[a]) << ',' << format_number(row.lower[a]) << ','
                << format_number(row.upper[a]);
        }
        out << '\n';
    }
}

void write_raw_csv(std::ostream &out, const CompareResult &result) {
    out << "agent,seed,episode,expected_reward,evaluated,mean_raw_reward,policy_circuits,"
           "gradient_circuits,metric_circuits,clip_events\n";
    for (const auto &log : result.runs) {
        for (const auto &rec : log.run.records) {
            out << log.agent << ',' << log.seed_index << ',' << rec.episode << ','
                << format_number(rec.expected_reward) << ',' << (rec.evaluated ? 1 : 0) << ','
                << format_number(rec.mean_raw_reward) << ',' << rec.circuits.policy_circuits << ','
                << rec.circuits.gradient_circuits << ',' << rec.circuits.metric_circuits << ','
                << rec.clip_events << '\n';
        }
    }
}

std::vector<LandscapePoint> compute_landscape(const ExperimentConfig &config) {
    config.validate();
    const CircuitTemplate tmpl = make_template(config);
    if (tmpl.parameter_count() != 2) {
        throw ConfigError("landscape needs a 2-parameter template, " + tmpl.name() + " has " +
                          std::to_string(tmpl.parameter_count()));
    }
    const BanditEnv env = make_env(config, 0);
    const std::size_t res = config.resolution;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(res);
    std::vector<LandscapePoint> grid(res * res);
    const auto rows = static_cast<std::ptrdiff_t>(res);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const double x = -std::numbers::pi + step * static_cast<double>(i);
        for (std::size_t j = 0; j < res; ++j) {
            const double y = -std::numbers::pi + step * static_cast<double>(j);
            const double theta[2] = {x, y};
            grid[static_cast<std::size_t>(i) * res + j] = {x, y,
                                                           exact_expected_reward(tmpl, env, theta)};
        }
    }
    return grid;
}

void write_landscape_csv(std::ostream &out, std::span<const LandscapePoint> grid) {
    out << "x,y,z\n";
    for (const auto &p : grid) {
        out << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.z)
            << '\n';
    }
}

ParameterVector trajectory_preset(std::string_view name) {
    // bandit1q landscape is <r> = sin(theta_1); both starts sit on the flat
    // side around the minimum at theta_1 = -pi/2
    if (name == "distorted") {
        return {2.0, -1.35};
    }
    if (name == "near_minimum") {
        return {-0.5, -1.45};
    }
    if (name == "stationary") {
        return {0.0, -std::numbers::pi / 2.0};
    }
    throw ConfigError("unknown trajectory preset '" + std::string(name) + "'");
}

ParameterVector parse_theta0(std::string_view text, std::size_t n_params) {
    ParameterVector theta;
    if (text.find(',') == std::string_view::npos && !text.empty() &&
        (std::isalpha(static_cast<unsigned char>(text.front())) != 0)) {
        theta = trajectory_preset(text);
    } else {
        for (const auto &item : split_list(text)) {
            theta.push_back(to_double("theta0", item));
        }
    }
    if (theta.size() != n_params) {
        throw DimensionError("theta0 has " + std::to_string(theta.size()) + " angles, expected " +
                             std::to_string(n_params));
    }
    return theta;
}

TrajectoryResult compute_trajectory(const ExperimentConfig &config, const ParameterVector &theta0,
                                    std::uint64_t master_seed, std::size_t seed_index) {
    config.validate();
    const CircuitTemplate tmpl = make_template(config);
    if (tmpl.parameter_count() != 2) {
        throw ConfigError("trajectory needs a 2-parameter template");
    }
    TrajectoryResult result;
    result.theta0 = theta0;
    const std::uint64_t seed = derive_seed(master_seed, "trajectory", seed_index);
    const std::uint64_t env_seed = derive_seed(master_seed, "trajectory/env", seed_index);
    for (const bool natural : {false, true}) {
        TrainerConfig tc = agent_config(config, natural ? "natural" : "vanilla", master_seed,
                                        seed_index);
        tc.seed = seed;
        tc.snapshot_every = 1;
        BanditEnv env = make_env(config, env_seed);
        (natural ? result.natural : result.vanilla) = train_from(env, tmpl, tc, theta0);
    }
    return result;
}

void write_trajectory_csv(std::ostream &out, const TrajectoryResult &result) {
    const std::size_t dim = result.theta0.size();
    out << "episode";
    for (const char *agent : {"vanilla", "natural"}) {
        for (std::size_t k = 0; k < dim; ++k) {
            out << ',' << agent << "_theta_" << k;
        }
        out << ',' << agent << "_reward";
    }
    out << '\n';
    const auto write_point = [&](std::span<const double> theta, double reward) {
        for (const double t : theta) {
            out << ',' << format_number(t);
        }
        out << ',' << format_number(reward);
    };
    out << 0;
    write_point(result.theta0, result.vanilla.initial_reward);
    write_point(result.theta0, result.natural.initial_reward);
    out << '\n';
    for (std::size_t e = 0; e < result.vanilla.records.size(); ++e) {
        const auto &v = result.vanilla.records[e];
        const auto &n = result.natural.records[e];
        out << v.episode;
        write_point(v.theta, v.expected_reward);
        write_point(n.theta, n.expected_reward);
        out << '\n';
    }
}

const std::vector<double> &table_thresholds() {
    static const std::vector<double> t = {0.95, 0.85, 0.75, 0.65, 0.55, 0.45, 0.35};
    return t;
}

ThresholdRow threshold_row(const CircuitTemplate &tmpl, const BanditEnv &env,
                           std::span<const double> theta, std::string label) {
    const auto &thresholds = table_thresholds();
    std::vector<std::size_t> counts(thresholds.size(), 0);
    std::size_t below = 0;
    const std::uint64_t states = env.state_count();
    for (std::uint64_t s = 0; s < states; ++s) {
        const double p = exact_policy(tmpl, s, theta)[env.optimal_action(s)];
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            counts[i] += p >= thresholds[i] ? 1U : 0U;
        }
        below += p < thresholds.back() ? 1U : 0U;
    }
    ThresholdRow row;
    row.label = std::move(label);
    const double scale = 100.0 / static_cast<double>(states);
    for (const auto c : counts) {
        row.at_least.push_back(static_cast<double>(c) * scale);
    }
    row.below = static_cast<double>(below) * scale;
    return row;
}

std::vector<ThresholdRow> compute_threshold_table(const ExperimentConfig &config) {
    config.validate();
    const CircuitTemplate tmpl = make_template(config);
    const BanditEnv env = make_env(config, 0);
    std::vector<ThresholdRow> rows;
    for (const auto &source : config.table_params) {
        ParameterVector theta;
        if (source == "fixture") {
            theta = load_fixture_params(config);
            if (theta.empty()) {
                throw ConfigError("table_params names 'fixture' but no fixture is configured");
            }
        } else if (source == "analytic") {
            if (config.ansatz == "parity_free") {
                theta = parity_free_optimum(config.qubits);
            } else if (config.ansatz == "parity") {
                theta = entangling_parity_optimum(tmpl, env);
            } else {
                throw ConfigError("no analytic optimum for ansatz " + config.ansatz);
            }
        } else if (source == "zeros") {
            theta.assign(tmpl.parameter_count(), 0.0);
        } else if (source.starts_with("file:")) {
            theta = read_fixture(source.substr(5)).theta;
        } else {
            throw ConfigError("unknown table_params source '" + source + "'");
        }
        if (theta.size() != tmpl.parameter_count()) {
            throw DimensionError("table parameters '" + source + "' have the wrong length");
        }
        rows.push_back(threshold_row(tmpl, env, theta, source));
    }
    return rows;
}

void write_threshold_csv(std::ostream &out, std::span<const ThresholdRow> rows) {
    out << "label";
    for (const double t : table_thresholds()) {
        out << ",>=" << format_number(t);
    }
    out << ",<" << format_number(table_thresholds().back()) << '\n';
    for (const auto &row : rows) {
        out << row.label;
        for (const double v : row.at_least) {
            out << ',' << format_number(v);
        }
        out << ',' << format_number(row.below) << '\n';
    }
}

std::vector<BudgetRow> compute_budget(const ExperimentConfig &config) {
    config.validate();
    const CircuitTemplate tmpl = make_template(config);
    std::vector<BudgetRow> rows;
    for (const auto &agent : config.agents) {
        const TrainerConfig tc = agent_config(config, agent, 0, 0);
        rows.push_back({agent, circuit_budget(tmpl.n_qubits(), tmpl.parameter_count(),
                                              tc.batch_size, tc.grad, tc.metric)});
    }
    return rows;
}

void write_budget_csv(std::ostream &out, std::span<const BudgetRow> rows) {
    out << "agent,policy_circuits,gradient_circuits,metric_circuits,total\n";
    for (const auto &r : rows) {
        out << r.agent << ',' << r.budget.policy_circuits << ',' << r.budget.gradient_circuits
            << ',' << r.budget.metric_circuits << ',' << r.budget.total << '\n';
    }
}

void write_meta(const std::filesystem::path &out, std::string_view verb,
                const ExperimentConfig &config, std::uint64_t master_seed) {
    write_file(sibling(out, ".meta"), [&](std::ostream &os) {
        os << "# qnpg " << kVersion << '\n'
           << "# verb = " << verb << '\n'
           << "# master_seed = " << master_seed << '\n'
           << echo_config(config);
    });
}

void run_compare(const ExperimentConfig &config, std::uint64_t master_seed,
                 const std::filesystem::path &out, bool raw) {
    const CompareResult result = compute_compare(config, master_seed);
    write_file(out, [&](std::ostream &os) { write_compare_csv(os, result); });
    if (raw) {
        write_file(sibling(out, ".raw.csv"), [&](std::ostream &os) { write_raw_csv(os, result); });
    }
    write_meta(out, "compare", config, master_seed);
}

void run_landscape(const ExperimentConfig &config, std::uint64_t master_seed,
                   const std::filesystem::path &out) {
    const auto grid = compute_landscape(config);
    write_file(out, [&](std::ostream &os) { write_landscape_csv(os, grid); });
    write_meta(out, "landscape", config, master_seed);
}

void run_trajectory(const ExperimentConfig &config, std::uint64_t master_seed,
                    const std::filesystem::path &out) {
    const CircuitTemplate tmpl = make_template(config);
    const ParameterVector theta0 = parse_theta0(config.theta0, tmpl.parameter_count());
    const auto result = compute_trajectory(config, theta0, master_seed);
    write_file(out, [&](std::ostream &os) { write_trajectory_csv(os, result); });
    write_meta(out, "trajectory", config, master_seed);
}

void run_threshold_table(const ExperimentConfig &config, std::uint64_t master_seed,
                         const std::filesystem::path &out) {
    const auto rows = compute_threshold_table(config);
    write_file(out, [&](std::ostream &os) { write_threshold_csv(os, rows); });
    write_meta(out, "table", config, master_seed);
}

void run_budget(const ExperimentConfig &config, std::uint64_t master_seed,
                const std::filesystem::path &out) {
    const auto rows = compute_budget(config);
    write_file(out, [&](std::ostream &os) { write_budget_csv(os, rows); });
    write_meta(out, "budget", config, master_seed);
}

} // namespace qnpg
