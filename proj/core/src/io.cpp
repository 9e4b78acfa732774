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

#include "spinbath/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "spinbath/thermal_ensemble.hpp"

namespace spinbath {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::config, "cannot open output file " + path.string());
    return out;
}

void write_record(std::ostream& out, const ObservableRecord& r) {
    out << format_real(r.time);
    for (double v : r.pol1) out << ',' << format_real(v);
    for (double v : r.pol2) out << ',' << format_real(v);
    out << ',' << format_real(r.c_xx) << ',' << format_real(r.c_yy) << ',' << format_real(r.c_zz) << ','
        << format_real(r.concurrence);
}

constexpr const char* kRecordHeader = "t,sx1,sy1,sz1,sx2,sy2,sz2,cxx,cyy,czz,concurrence";

}  // namespace

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_metadata(std::ostream& out, const RunMetadata& meta) {
    out << "# config " << meta.config_json << '\n';
    out << "# ensemble_size " << meta.ensemble_size << '\n';
    out << "# total_bath_states " << meta.total_bath_states << '\n';
    out << "# retained_weight " << format_real(meta.retained_weight) << '\n';
    out << "# truncation_mass " << format_real(meta.truncation_mass()) << '\n';
    out << "# spectral_shift " << format_real(meta.spectral_shift) << '\n';
    out << "# screened_dt " << format_real(meta.screened_dt) << '\n';
    out << "# accepted_dt " << format_real(meta.accepted_dt) << '\n';
    out << "# propagation_steps " << meta.propagation_steps << '\n';
    out << "# halvings " << meta.halvings << '\n';
    out << "# max_step_norm_deviation " << format_real(meta.max_step_norm_deviation) << '\n';
    out << "# max_energy_drift " << format_real(meta.max_energy_drift) << '\n';
    if (meta.oracle_max_deviation) out << "# oracle_max_deviation " << format_real(*meta.oracle_max_deviation) << '\n';
}

void write_time_series(std::ostream& out, const RunResult& result) {
    write_metadata(out, result.metadata);
    const std::size_t bins = result.histograms.empty() ? 0 : result.histograms.front().probabilities.size();
    out << kRecordHeader;
    for (std::size_t n = 0; n < bins; ++n) out << ",p" << n;
    out << '\n';
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        write_record(out, result.records[i]);
        for (double p : result.histograms[i].probabilities) out << ',' << format_real(p);
        out << '\n';
    }
}

void write_run_outputs(const RunConfig& cfg, const RunResult& result) {
    const auto& dir = cfg.outputs.directory;
    if (dir.empty()) return;
    auto ts = open_output(dir / "timeseries.csv");
    write_time_series(ts, result);
    if (cfg.outputs.write_spectrum) {
        const auto pairs = diagonalize_bath(cfg.model);
        const auto weights = boltzmann_weights(pairs, cfg.model.temperature);
        auto sp = open_output(dir / "spectrum.csv");
        sp << "# config " << result.metadata.config_json << '\n';
        write_spectrum(sp, pairs, weights);
    }
}

void write_isolated(std::ostream& out, std::span<const ObservableRecord> records) {
    out << kRecordHeader << '\n';
    for (const auto& r : records) {
        write_record(out, r);
        out << '\n';
    }
}

void write_summary(std::ostream& out, SweepParameter parameter, std::span<const SweepOutcome> outcomes) {
    out << sweep_parameter_name(parameter) << ",ensemble_size,rms_cxx,rms_cyy,rms_czz,rms_concurrence,status\n";
    for (const auto& o : outcomes) {
        out << format_real(o.value) << ',';
        if (o.ok()) {
            out << o.result->metadata.ensemble_size;
            for (double m : o.metrics) out << ',' << format_real(m);
            out << ",ok\n";
        } else {
            out << ",,,,," << to_string(o.error_kind) << '\n';
        }
    }
}

void write_sweep_outputs(const std::filesystem::path& directory, SweepParameter parameter,
                         std::span<const SweepOutcome> outcomes) {
    if (directory.empty()) return;
    const std::string name = sweep_parameter_name(parameter);
    for (const auto& o : outcomes) {
        if (!o.ok()) continue;
        const std::string tag = name + "_" + format_real(o.value);
        auto ts = open_output(directory / (tag + ".csv"));
        write_time_series(ts, *o.result);
        auto iso = open_output(directory / (tag + "_isolated.csv"));
        iso << "# config " << o.result->metadata.config_json << '\n';
        write_isolated(iso, o.isolated);
    }
    auto summary = open_output(directory / "summary.csv");
    write_summary(summary, parameter, outcomes);
}

void write_table1(std::ostream& out, const Table1& table) {
    out << "# total_bath_states " << table.total_states << '\n';
    out << "temperature,threshold,computed,reference,match\n";
    for (const auto& c : table.cells) {
        out << format_real(c.temperature) << ',' << format_real(c.threshold) << ',' << c.computed << ','
            << c.reference << ',' << (c.matches() ? "yes" : "no") << '\n';
    }
}

}  // namespace spinbath
