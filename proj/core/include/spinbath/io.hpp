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
// Output files. Every file starts with '#' lines carrying the resolved config
// and deterministic run metadata, then a header row and comma-separated data.

#include <filesystem>
#include <iosfwd>
#include <span>

#include "spinbath/driver.hpp"
#include "spinbath/format.hpp"
#include "spinbath/order_sweep.hpp"

namespace spinbath {

void write_metadata(std::ostream& out, const RunMetadata& meta);

/// Columns t, sx1, sy1, sz1, sx2, sy2, sz2, cxx, cyy, czz, concurrence, p0..pm.
void write_time_series(std::ostream& out, const RunResult& result);

/// Writes timeseries.csv (and spectrum.csv when requested) into cfg.outputs.directory.
void write_run_outputs(const RunConfig& cfg, const RunResult& result);

/// <param>_<value>.csv per successful value, isolated.csv per value, and summary.csv.
void write_sweep_outputs(const std::filesystem::path& directory, SweepParameter parameter,
                         std::span<const SweepOutcome> outcomes);

void write_summary(std::ostream& out, SweepParameter parameter, std::span<const SweepOutcome> outcomes);

void write_isolated(std::ostream& out, std::span<const ObservableRecord> records);

/// temperature,threshold,computed,reference,match
void write_table1(std::ostream& out, const Table1& table);

}  // namespace spinbath
