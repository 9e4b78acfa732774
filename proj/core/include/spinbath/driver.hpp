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

#pragma once

// Experiment orchestration: thermal bath preparation, concurrent evolution of
// the ensemble members, deterministic reduction into rho_S(t) and P(n, t).

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinbath/bath_order.hpp"
#include "spinbath/config.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/observables.hpp"

namespace spinbath {

struct RunMetadata {
    std::string config_json;
    std::size_t ensemble_size = 0;      // M
    std::size_t total_bath_states = 0;  // 2^m
    double retained_weight = 0.0;       // sum of kept raw weights
    double spectral_shift = 0.0;
    double screened_dt = 0.0;
    double accepted_dt = 0.0;
    std::size_t propagation_steps = 0;  // summed over members
    int halvings = 0;
    double max_step_norm_deviation = 0.0;
    double max_energy_drift = 0.0;
    std::optional<double> oracle_max_deviation;
    double wall_seconds = 0.0;          // not written to output files

    double truncation_mass() const noexcept { return 1.0 - retained_weight; }
};

struct RunResult {
    std::vector<ObservableRecord> records;
    std::vector<OrderHistogram> histograms;  // same time grid as records
    std::vector<ReducedDensityMatrix> densities;
    RunMetadata metadata;
};

RunResult run(const RunConfig& config);

/// Observables of the two spins evolving alone under the 4x4 H_S (exact).
std::vector<ObservableRecord> isolated_reference(const RunConfig& config);

enum class Column { sx1, sy1, sz1, sx2, sy2, sz2, cxx, cyy, czz, concurrence };

Column parse_column(std::string_view name);
const char* column_name(Column column) noexcept;
double column_value(const ObservableRecord& record, Column column) noexcept;

/// RMS deviation of one column between aligned time series.
double suppression_metric(std::span<const ObservableRecord> open, std::span<const ObservableRecord> isolated,
                          Column column);

enum class SweepParameter { lambda_bb, temperature, n_bath };

SweepParameter parse_sweep_parameter(std::string_view name);
const char* sweep_parameter_name(SweepParameter p) noexcept;
RunConfig with_parameter(RunConfig config, SweepParameter p, double value);

struct SweepOutcome {
    double value = 0.0;
    RunConfig config;
    std::optional<RunResult> result;
    std::vector<ObservableRecord> isolated;
    std::array<double, 4> metrics{};  // RMS for cxx, cyy, czz, concurrence
    std::string error;                // empty on success
    ErrorKind error_kind = ErrorKind::numerical;

    bool ok() const noexcept { return result.has_value(); }
};

inline constexpr std::array<Column, 4> kSuppressionColumns = {Column::cxx, Column::cyy, Column::czz,
                                                             Column::concurrence};

/// Independent runs, one per value. A failing value is recorded and the
/// remaining values still run.
std::vector<SweepOutcome> sweep(const RunConfig& base, SweepParameter parameter, std::span<const double> values);

struct Table1Cell {
    double temperature = 0.0;
    double threshold = 0.0;
    std::size_t computed = 0;
    std::size_t reference = 0;

    /// Exact, or within one state of the reference (threshold-boundary allowance).
    bool matches() const noexcept {
        return (computed > reference ? computed - reference : reference - computed) <= 1;
    }
};

struct Table1 {
    std::vector<Table1Cell> cells;  // threshold-major: 3 thresholds x 6 temperatures
    std::size_t total_states = 0;
};

/// m = 8, lambda_bb = 4, other parameters at their defaults.
ModelSpec table1_model();

Table1 reproduce_table1(const ModelSpec& base = table1_model());

}  // namespace spinbath
