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

#include "spinbath/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "spinbath/errors.hpp"

namespace spinbath {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorKind::config, message);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    if (!obj.is_object()) config_error(where + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool found = false;
        for (const char* k : known) found = found || item.key() == k;
        if (!found) config_error("unknown key '" + item.key() + "' in " + where);
    }
}

template <typename T>
void read(const json& obj, const char* key, T& target) {
    if (!obj.contains(key)) return;
    try {
        target = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        config_error(std::string("bad value for '") + key + "': " + e.what());
    }
}

Complex parse_amplitude(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    config_error("custom amplitude must be a number or [re, im]");
}

const char* mode_name(SamplingPolicy::Mode m) {
    return m == SamplingPolicy::Mode::instant ? "instant" : "time_average";
}

}  // namespace

InitialState InitialState::bell(int which) {
    if (which < 1 || which > 4) throw_invalid("Bell state index must be 1..4");
    InitialState s;
    s.kind_ = static_cast<Kind>(which - 1);
    return s;
}

InitialState InitialState::custom(std::array<Complex, 4> amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10) throw_invalid("custom amplitudes must be normalized within 1e-10");
    InitialState s;
    s.kind_ = Kind::custom;
    s.custom_ = amplitudes;
    return s;
}

InitialState InitialState::parse(std::string_view text) {
    for (int k = 1; k <= 4; ++k) {
        if (text == "bell" + std::to_string(k)) return bell(k);
    }
    constexpr std::string_view prefix = "custom:";
    if (text.substr(0, prefix.size()) == prefix) {
        std::array<Complex, 4> amps{};
        std::stringstream ss{std::string(text.substr(prefix.size()))};
        std::string item;
        std::size_t n = 0;
        while (std::getline(ss, item, ',')) {
            if (n >= 4) throw_invalid("custom initial state takes exactly four amplitudes");
            try {
                amps[n++] = std::stod(item);
            } catch (const std::exception&) {
                throw_invalid("bad custom amplitude '" + item + "'");
            }
        }
        if (n != 4) throw_invalid("custom initial state takes exactly four amplitudes");
        return custom(amps);
    }
    throw_invalid("unknown initial state '" + std::string(text) + "'");
}

std::array<Complex, 4> InitialState::amplitudes() const noexcept {
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind_) {
    case Kind::bell1: return {s, 0.0, 0.0, s};
    case Kind::bell2: return {0.0, s, s, 0.0};
    case Kind::bell3: return {-s, 0.0, 0.0, s};
    case Kind::bell4: return {0.0, -s, s, 0.0};
    case Kind::custom: return custom_;
    }
    return custom_;
}

StateVector InitialState::state() const {
    const auto a = amplitudes();
    return StateVector(2, std::vector<Complex>(a.begin(), a.end()));
}

std::string InitialState::name() const {
    if (kind_ == Kind::custom) return "custom";
    return "bell" + std::to_string(static_cast<int>(kind_) + 1);
}

void RunConfig::validate() const {
    model.validate();
    propagator.validate();
    if (!(t_max > 0.0)) throw_invalid("t_max must be > 0");
    if (n_samples < 2) throw_invalid("n_samples must be >= 2");
    if (!(weight_threshold > 0.0 && weight_threshold < 1.0)) {
        throw_invalid("weight_threshold must lie in (0, 1)");
    }
    if (threads < 0) throw_invalid("threads must be >= 0");
    if (!bath_relabeling.empty() && static_cast<int>(bath_relabeling.size()) != model.n_bath) {
        throw_invalid("bath_relabeling must list every bath spin");
    }
}

std::vector<double> RunConfig::time_grid() const { return uniform_grid(t_max, n_samples); }

RunConfig config_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root,
                   {"model", "initial_state", "custom_amplitudes", "t_max", "n_samples",
                    "weight_threshold", "renormalize_weights", "propagator", "oracle_check", "output",
                    "sampling", "seed", "threads", "bath_relabeling"},
                   "config");
    RunConfig cfg;
    if (root.contains("model")) {
        const json& m = root["model"];
        reject_unknown(m,
                       {"n_bath", "omega_s", "omega_b", "beta", "lambda_ss", "lambda_bb", "lambda_sb",
                        "temperature"},
                       "model");
        read(m, "n_bath", cfg.model.n_bath);
        read(m, "omega_s", cfg.model.omega_s);
        read(m, "omega_b", cfg.model.omega_b);
        read(m, "beta", cfg.model.beta);
        read(m, "lambda_ss", cfg.model.lambda_ss);
        read(m, "lambda_bb", cfg.model.lambda_bb);
        read(m, "lambda_sb", cfg.model.lambda_sb);
        read(m, "temperature", cfg.model.temperature);
    }
    std::string initial = "bell1";
    read(root, "initial_state", initial);
    try {
        if (initial == "custom") {
            if (!root.contains("custom_amplitudes") || !root["custom_amplitudes"].is_array() ||
                root["custom_amplitudes"].size() != 4) {
                config_error("initial_state 'custom' needs custom_amplitudes with four entries");
            }
            std::array<Complex, 4> amps{};
            for (std::size_t i = 0; i < 4; ++i) amps[i] = parse_amplitude(root["custom_amplitudes"][i]);
            cfg.initial_state = InitialState::custom(amps);
        } else {
            cfg.initial_state = InitialState::parse(initial);
        }
    } catch (const Error& e) {
        config_error(e.what());
    }
    read(root, "t_max", cfg.t_max);
    read(root, "n_samples", cfg.n_samples);
    read(root, "weight_threshold", cfg.weight_threshold);
    read(root, "renormalize_weights", cfg.renormalize_weights);
    read(root, "oracle_check", cfg.oracle_check);
    read(root, "seed", cfg.seed);
    read(root, "threads", cfg.threads);
    read(root, "bath_relabeling", cfg.bath_relabeling);
    if (root.contains("propagator")) {
        const json& p = root["propagator"];
        reject_unknown(p,
                       {"alpha", "k_max", "dt", "unitarity_tol", "series_tol", "spectral_shift",
                        "max_halvings"},
                       "propagator");
        read(p, "alpha", cfg.propagator.alpha);
        read(p, "k_max", cfg.propagator.k_max);
        read(p, "dt", cfg.propagator.dt);
        read(p, "unitarity_tol", cfg.propagator.unitarity_tol);
        read(p, "series_tol", cfg.propagator.series_tol);
        read(p, "max_halvings", cfg.propagator.max_halvings);
        if (p.contains("spectral_shift") && !p["spectral_shift"].is_null()) {
            double shift = 0.0;
            read(p, "spectral_shift", shift);
            cfg.propagator.spectral_shift = shift;
        }
    }
    if (root.contains("output")) {
        const json& o = root["output"];
        reject_unknown(o, {"directory", "write_spectrum"}, "output");
        std::string dir;
        read(o, "directory", dir);
        cfg.outputs.directory = dir;
        read(o, "write_spectrum", cfg.outputs.write_spectrum);
    }
    if (root.contains("sampling")) {
        const json& s = root["sampling"];
        reject_unknown(s, {"mode", "transient_fraction", "instant_time"}, "sampling");
        std::string mode = mode_name(cfg.sampling.mode);
        read(s, "mode", mode);
        if (mode == "time_average") cfg.sampling.mode = SamplingPolicy::Mode::time_average;
        else if (mode == "instant") cfg.sampling.mode = SamplingPolicy::Mode::instant;
        else config_error("sampling.mode must be 'time_average' or 'instant'");
        read(s, "transient_fraction", cfg.sampling.transient_fraction);
        read(s, "instant_time", cfg.sampling.instant_time);
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        config_error(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

std::string to_json(const RunConfig& cfg) {
    json j;
    j["model"] = {{"n_bath", cfg.model.n_bath},       {"omega_s", cfg.model.omega_s},
                  {"omega_b", cfg.model.omega_b},     {"beta", cfg.model.beta},
                  {"lambda_ss", cfg.model.lambda_ss}, {"lambda_bb", cfg.model.lambda_bb},
                  {"lambda_sb", cfg.model.lambda_sb}, {"temperature", cfg.model.temperature}};
    j["initial_state"] = cfg.initial_state.name();
    json amps = json::array();
    for (const auto& a : cfg.initial_state.amplitudes()) amps.push_back({a.real(), a.imag()});
    j["custom_amplitudes"] = amps;
    j["t_max"] = cfg.t_max;
    j["n_samples"] = cfg.n_samples;
    j["weight_threshold"] = cfg.weight_threshold;
    j["renormalize_weights"] = cfg.renormalize_weights;
    j["propagator"] = {{"alpha", cfg.propagator.alpha},
                       {"k_max", cfg.propagator.k_max},
                       {"dt", cfg.propagator.dt},
                       {"unitarity_tol", cfg.propagator.unitarity_tol},
                       {"series_tol", cfg.propagator.series_tol},
                       {"max_halvings", cfg.propagator.max_halvings}};
    j["propagator"]["spectral_shift"] =
        cfg.propagator.spectral_shift ? json(*cfg.propagator.spectral_shift) : json(nullptr);
    j["oracle_check"] = cfg.oracle_check;
    j["output"] = {{"directory", cfg.outputs.directory.string()},
                   {"write_spectrum", cfg.outputs.write_spectrum}};
    j["sampling"] = {{"mode", mode_name(cfg.sampling.mode)},
                     {"transient_fraction", cfg.sampling.transient_fraction},
                     {"instant_time", cfg.sampling.instant_time}};
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["bath_relabeling"] = cfg.bath_relabeling;
    return j.dump();
}

}  // namespace spinbath
