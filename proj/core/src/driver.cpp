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

#include "spinbath/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "spinbath/propagator.hpp"
#include "spinbath/thermal_ensemble.hpp"

namespace spinbath {
namespace {

// Per-member partial sums, unweighted; reduced in member order afterwards.
struct MemberTrace {
    std::vector<Eigen::Matrix4cd> rho;
    std::vector<double> bins;  // n_times x (m + 1)
    EvolutionStats stats;
    double oracle_deviation = 0.0;
    std::exception_ptr error;
};

StateVector relabel_bath(const StateVector& bath, const std::vector<int>& labels) {
    if (labels.empty()) return bath;
    return permute_sites(bath, labels);
}

int worker_count(int requested, std::size_t jobs) {
    unsigned n = requested > 0 ? static_cast<unsigned>(requested) : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    return static_cast<int>(std::min<std::size_t>(n, jobs));
}

}  // namespace

RunResult run(const RunConfig& config) {
    config.validate();
    const auto wall_start = std::chrono::steady_clock::now();
    const ModelSpec& spec = config.model;
    const int m = spec.n_bath;
    const auto grid = config.time_grid();
    const std::size_t n_times = grid.size();
    const std::size_t n_bins = static_cast<std::size_t>(m) + 1;

    const auto pairs = diagonalize_bath(spec);
    const auto weights = boltzmann_weights(pairs, spec.temperature);
    const ThermalEnsemble ensemble = truncate(weights, pairs, config.weight_threshold, config.renormalize_weights);

    const LaguerrePropagator propagator(spec, config.propagator);
    std::optional<DenseEvolver> oracle;
    if (config.oracle_check) oracle.emplace(spec);

    const StateVector subsystem = config.initial_state.state();
    const std::size_t n_members = ensemble.size();
    std::vector<MemberTrace> traces(n_members);

    auto evolve_member = [&](std::size_t j) {
        MemberTrace& tr = traces[j];
        try {
            const EnsembleMember& member = ensemble.members[j];
            const StateVector psi0 = tensor_product(subsystem, relabel_bath(member.state, config.bath_relabeling));
            tr.rho.assign(n_times, Eigen::Matrix4cd::Zero());
            tr.bins.assign(n_times * n_bins, 0.0);
            tr.stats = propagator.evolve(psi0, grid, [&](std::size_t i, double t, const StateVector& psi) {
                accumulate_reduced_density(tr.rho[i], 1.0, psi);
                accumulate_order(std::span<double>(tr.bins).subspan(i * n_bins, n_bins), 1.0, psi, m);
                if (oracle) {
                    tr.oracle_deviation = std::max(tr.oracle_deviation, distance(psi, oracle->at(psi0, t)));
                }
            });
        } catch (...) {
            tr.error = std::current_exception();
        }
    };

    const int workers = worker_count(config.threads, n_members);
    if (workers <= 1) {
        for (std::size_t j = 0; j < n_members; ++j) evolve_member(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < n_members; j = next++) evolve_member(j);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (std::size_t j = 0; j < n_members; ++j) {
        if (!traces[j].error) continue;
        const EnsembleMember& member = ensemble.members[j];
        std::ostringstream ctx;
        ctx << "ensemble member " << j << " (bath eigenstate " << member.eigen_index << ", weight "
            << member.weight << "): ";
        try {
            std::rethrow_exception(traces[j].error);
        } catch (const Error& e) {
            throw Error(e.kind(), ctx.str() + e.what());
        } catch (const std::exception& e) {
            throw Error(ErrorKind::numerical, ctx.str() + e.what());
        }
    }

    RunResult result;
    RunMetadata& meta = result.metadata;
    meta.config_json = to_json(config);
    meta.ensemble_size = n_members;
    meta.total_bath_states = ensemble.total_states;
    meta.retained_weight = ensemble.partition_renorm;
    meta.spectral_shift = propagator.spectral_shift();
    meta.screened_dt = propagator.screened_dt();
    if (oracle) meta.oracle_max_deviation = 0.0;

    double weight_sum = 0.0;
    for (const auto& member : ensemble.members) weight_sum += member.weight;
    for (std::size_t j = 0; j < n_members; ++j) {
        const EvolutionStats& s = traces[j].stats;
        meta.accepted_dt = std::max(meta.accepted_dt, s.accepted_dt);
        meta.propagation_steps += s.steps;
        meta.halvings = std::max(meta.halvings, s.halvings);
        meta.max_step_norm_deviation = std::max(meta.max_step_norm_deviation, s.max_step_norm_deviation);
        meta.max_energy_drift = std::max(meta.max_energy_drift, s.max_energy_drift);
        if (oracle) meta.oracle_max_deviation = std::max(*meta.oracle_max_deviation, traces[j].oracle_deviation);
    }

    result.records.reserve(n_times);
    result.histograms.reserve(n_times);
    result.densities.reserve(n_times);
    for (std::size_t i = 0; i < n_times; ++i) {
        ReducedDensityMatrix rho;
        OrderHistogram hist;
        hist.time = grid[i];
        hist.lambda_bb = spec.lambda_bb;
        hist.probabilities.assign(n_bins, 0.0);
        for (std::size_t j = 0; j < n_members; ++j) {
            const double w = ensemble.members[j].weight;
            rho.entries += w * traces[j].rho[i];
            for (std::size_t b = 0; b < n_bins; ++b) hist.probabilities[b] += w * traces[j].bins[i * n_bins + b];
        }
        rho.entries /= weight_sum;
        for (auto& p : hist.probabilities) p /= weight_sum;

        check_density_matrix(rho, 1e-8);
        ObservableRecord rec = make_record(grid[i], rho);
        check_record(rec);
        result.records.push_back(rec);
        result.histograms.push_back(std::move(hist));
        result.densities.push_back(rho);
    }

    meta.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return result;
}

std::vector<ObservableRecord> isolated_reference(const RunConfig& config) {
    config.validate();
    const DenseEvolver evolver(dense_matrix(config.model, HamiltonianPart::S, OperatorSpace::local));
    const StateVector psi0 = config.initial_state.state();
    std::vector<ObservableRecord> out;
    for (double t : config.time_grid()) out.push_back(make_record(t, pure_density(evolver.at(psi0, t))));
    return out;
}

Column parse_column(std::string_view name) {
    for (int c = 0; c <= static_cast<int>(Column::concurrence); ++c) {
        if (name == column_name(static_cast<Column>(c))) return static_cast<Column>(c);
    }
    throw_invalid("unknown observable column '" + std::string(name) + "'");
}

const char* column_name(Column column) noexcept {
    switch (column) {
    case Column::sx1: return "sx1";
    case Column::sy1: return "sy1";
    case Column::sz1: return "sz1";
    case Column::sx2: return "sx2";
    case Column::sy2: return "sy2";
    case Column::sz2: return "sz2";
    case Column::cxx: return "cxx";
    case Column::cyy: return "cyy";
    case Column::czz: return "czz";
    case Column::concurrence: return "concurrence";
    }
    return "?";
}

double column_value(const ObservableRecord& r, Column column) noexcept {
    switch (column) {
    case Column::sx1: return r.pol1[0];
    case Column::sy1: return r.pol1[1];
    case Column::sz1: return r.pol1[2];
    case Column::sx2: return r.pol2[0];
    case Column::sy2: return r.pol2[1];
    case Column::sz2: return r.pol2[2];
    case Column::cxx: return r.c_xx;
    case Column::cyy: return r.c_yy;
    case Column::czz: return r.c_zz;
    case Column::concurrence: return r.concurrence;
    }
    return 0.0;
}

double suppression_metric(std::span<const ObservableRecord> open, std::span<const ObservableRecord> isolated,
                          Column column) {
    if (open.size() != isolated.size() || open.empty()) throw_invalid("time series have different grids");
    double acc = 0.0;
    for (std::size_t i = 0; i < open.size(); ++i) {
        if (std::abs(open[i].time - isolated[i].time) > 1e-9) throw_invalid("time series have different grids");
        const double d = column_value(open[i], column) - column_value(isolated[i], column);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(open.size()));
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    if (name == "lambda_bb") return SweepParameter::lambda_bb;
    if (name == "temperature") return SweepParameter::temperature;
    if (name == "n_bath") return SweepParameter::n_bath;
    throw_invalid("unknown sweep parameter '" + std::string(name) + "'");
}

const char* sweep_parameter_name(SweepParameter p) noexcept {
    switch (p) {
    case SweepParameter::lambda_bb: return "lambda_bb";
    case SweepParameter::temperature: return "temperature";
    case SweepParameter::n_bath: return "n_bath";
    }
    return "?";
}

RunConfig with_parameter(RunConfig config, SweepParameter p, double value) {
    switch (p) {
    case SweepParameter::lambda_bb: config.model.lambda_bb = value; break;
    case SweepParameter::temperature: config.model.temperature = value; break;
    case SweepParameter::n_bath:
        if (value < 0.0 || value != std::floor(value)) throw_invalid("n_bath sweep values must be integers >= 0");
        config.model.n_bath = static_cast<int>(value);
        config.bath_relabeling.clear();
        break;
    }
    return config;
}

std::vector<SweepOutcome> sweep(const RunConfig& base, SweepParameter parameter, std::span<const double> values) {
    if (values.empty()) throw_invalid("sweep needs at least one value");
    std::vector<SweepOutcome> out;
    for (double v : values) {
        SweepOutcome o;
        o.value = v;
        try {
            o.config = with_parameter(base, parameter, v);
            o.result = run(o.config);
            o.isolated = isolated_reference(o.config);
            for (std::size_t c = 0; c < kSuppressionColumns.size(); ++c) {
                o.metrics[c] = suppression_metric(o.result->records, o.isolated, kSuppressionColumns[c]);
            }
        } catch (const Error& e) {
            o.result.reset();
            o.error = e.what();
            o.error_kind = e.kind();
        }
        out.push_back(std::move(o));
    }
    return out;
}

ModelSpec table1_model() {
    ModelSpec spec;
    spec.n_bath = 8;
    spec.lambda_bb = 4.0;
    return spec;
}

Table1 reproduce_table1(const ModelSpec& base) {
    static constexpr std::array<double, 6> temperatures = {0.04, 0.05, 0.08, 0.10, 0.15, 0.20};
    static constexpr std::array<double, 3> thresholds = {1e-5, 1e-4, 1e-3};
    // Reference counts (rows: thresholds above, columns: temperatures above).
    static constexpr std::array<std::array<std::size_t, 6>, 3> reference = {{
        {8, 8, 28, 70, 70, 70},
        {1, 8, 8, 28, 28, 70},
        {1, 1, 8, 8, 28, 70},
    }};

    const auto pairs = diagonalize_bath(base);
    Table1 table;
    table.total_states = pairs.size();
    for (std::size_t r = 0; r < thresholds.size(); ++r) {
        for (std::size_t c = 0; c < temperatures.size(); ++c) {
            const auto w = boltzmann_weights(pairs, temperatures[c]);
            table.cells.push_back({temperatures[c], thresholds[r], count_above(w, thresholds[r]), reference[r][c]});
        }
    }
    return table;
}

}  // namespace spinbath
