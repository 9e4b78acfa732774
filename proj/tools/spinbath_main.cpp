// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinbath/driver.hpp"
#include "spinbath/io.hpp"
#include "spinbath/order_sweep.hpp"

namespace {

using namespace spinbath;

struct Overrides {
    std::string config_path;
    std::optional<int> bath_spins;
    std::optional<double> lambda_bb, lambda_ss, lambda_sb, temperature, t_max, threshold, alpha;
    std::optional<std::string> initial_state;
    std::optional<int> samples, k_max, threads;
    bool oracle_check = false;
    std::string out;
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config_path, "JSON config file");
    app->add_option("--bath-spins", o.bath_spins, "number of bath spins m");
    app->add_option("--lambda-bb", o.lambda_bb, "intra-bath coupling");
    app->add_option("--lambda-ss", o.lambda_ss, "subsystem coupling");
    app->add_option("--lambda-sb", o.lambda_sb, "subsystem-bath coupling");
    app->add_option("--temperature", o.temperature, "bath temperature");
    app->add_option("--initial-state", o.initial_state, "bell1..bell4 or custom:a,b,c,d");
    app->add_option("--t-max", o.t_max, "final time");
    app->add_option("--samples", o.samples, "output grid size");
    app->add_option("--threshold", o.threshold, "Boltzmann weight threshold");
    app->add_option("--alpha", o.alpha, "Laguerre parameter");
    app->add_option("--kmax", o.k_max, "Laguerre truncation order");
    app->add_option("--threads", o.threads, "worker threads (0: all cores)");
    app->add_flag("--oracle-check", o.oracle_check, "compare against dense evolution");
    app->add_option("--out", o.out, "output directory");
}

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.bath_spins) cfg.model.n_bath = *o.bath_spins;
    if (o.lambda_bb) cfg.model.lambda_bb = *o.lambda_bb;
    if (o.lambda_ss) cfg.model.lambda_ss = *o.lambda_ss;
    if (o.lambda_sb) cfg.model.lambda_sb = *o.lambda_sb;
    if (o.temperature) cfg.model.temperature = *o.temperature;
    if (o.initial_state) cfg.initial_state = InitialState::parse(*o.initial_state);
    if (o.t_max) cfg.t_max = *o.t_max;
    if (o.samples) cfg.n_samples = *o.samples;
    if (o.threshold) cfg.weight_threshold = *o.threshold;
    if (o.alpha) cfg.propagator.alpha = *o.alpha;
    if (o.k_max) cfg.propagator.k_max = *o.k_max;
    if (o.threads) cfg.threads = *o.threads;
    if (o.oracle_check) cfg.oracle_check = true;
    if (!o.out.empty()) cfg.outputs.directory = o.out;
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::config, e.what());
    }
    return cfg;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::config, "bad number '" + item + "' in list");
        }
    }
    if (values.empty()) throw Error(ErrorKind::config, "empty value list");
    return values;
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_run(const Overrides& o) {
    const RunConfig cfg = resolve(o);
    const RunResult r = run(cfg);
    if (cfg.outputs.directory.empty()) {
        write_time_series(std::cout, r);
    } else {
        write_run_outputs(cfg, r);
    }
    const auto& m = r.metadata;
    std::cerr << "M=" << m.ensemble_size << " truncation_mass=" << format_real(m.truncation_mass())
              << " dt=" << format_real(m.accepted_dt) << " steps=" << m.propagation_steps;
    if (m.oracle_max_deviation) std::cerr << " oracle_dev=" << format_real(*m.oracle_max_deviation);
    std::cerr << " wall=" << format_real(m.wall_seconds) << "s\n";
    return 0;
}

int cmd_sweep(const Overrides& o, const std::string& param, const std::string& values) {
    const RunConfig cfg = resolve(o);
    const SweepParameter p = parse_sweep_parameter(param);
    const auto list = parse_list(values);
    const auto start = std::chrono::steady_clock::now();
    const auto outcomes = sweep(cfg, p, list);
    if (cfg.outputs.directory.empty()) {
        write_summary(std::cout, p, outcomes);
    } else {
        write_sweep_outputs(cfg.outputs.directory, p, outcomes);
    }
    int code = 0;
    for (const auto& oc : outcomes) {
        if (!oc.ok()) {
            std::cerr << sweep_parameter_name(p) << "=" << format_real(oc.value) << " failed: " << oc.error << '\n';
            code = std::max(code, exit_code(oc.error_kind));
        }
    }
    std::cerr << "wall=" << format_real(elapsed(start)) << "s\n";
    return code;
}

int cmd_table1(const Overrides& o) {
    ModelSpec spec = table1_model();
    if (!o.config_path.empty()) spec = load_config(o.config_path).model;
    const Table1 t = reproduce_table1(spec);
    write_table1(std::cout, t);
    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        std::ofstream f(std::filesystem::path(o.out) / "table1.csv", std::ios::binary);
        write_table1(f, t);
    }
    return 0;
}

int cmd_order_sweep(const Overrides& o, const std::string& grid_text, std::optional<int> bin) {
    const RunConfig cfg = resolve(o);
    const auto grid = parse_list(grid_text);
    const auto start = std::chrono::steady_clock::now();
    const auto points = order_sweep(cfg, grid, cfg.sampling, bin);
    if (cfg.outputs.directory.empty()) {
        write_order_sweep(std::cout, points);
    } else {
        std::filesystem::create_directories(cfg.outputs.directory);
        std::ofstream f(cfg.outputs.directory / "order_sweep.csv", std::ios::binary);
        f << "# config " << to_json(cfg) << '\n';
        write_order_sweep(f, points);
    }
    std::cerr << "wall=" << format_real(elapsed(start)) << "s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-spin subsystem coupled to an interacting spin bath"};
    app.require_subcommand(1);

    Overrides run_o, sweep_o, table_o, order_o;
    std::string sweep_param = "lambda_bb", sweep_values;
    std::string order_grid = "0,0.5,1,2,3,4,5,6,8,10";
    std::optional<int> order_bin;

    auto* run_cmd = app.add_subcommand("run", "single run, time series of all observables");
    add_common(run_cmd, run_o);

    auto* sweep_cmd = app.add_subcommand("sweep", "independent runs over one parameter");
    add_common(sweep_cmd, sweep_o);
    sweep_cmd->add_option("--param", sweep_param, "lambda_bb, temperature or n_bath");
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();

    auto* table_cmd = app.add_subcommand("table1", "retained bath states per temperature and threshold");
    table_cmd->add_option("--config", table_o.config_path, "JSON config file (model section used)");
    table_cmd->add_option("--out", table_o.out, "output directory");

    auto* order_cmd = app.add_subcommand("order-sweep", "bath half-filling probability against lambda_bb");
    add_common(order_cmd, order_o);
    order_cmd->add_option("--grid", order_grid, "comma-separated lambda_bb values");
    order_cmd->add_option("--bin", order_bin, "P(n) bin (default m/2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code(ErrorKind::config);
    }

    try {
        if (*run_cmd) return cmd_run(run_o);
        if (*sweep_cmd) return cmd_sweep(sweep_o, sweep_param, sweep_values);
        if (*table_cmd) return cmd_table1(table_o);
        if (*order_cmd) return cmd_order_sweep(order_o, order_grid, order_bin);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
