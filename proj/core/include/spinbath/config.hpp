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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spinbath/bath_order.hpp"
#include "spinbath/model_hamiltonian.hpp"
#include "spinbath/propagator.hpp"
#include "spinbath/spin_hilbert.hpp"

namespace spinbath {

/// Initial two-spin state: one of the four Bell states or custom amplitudes
/// (a, b, c, d) of a|00> + b|01> + c|10> + d|11>.
///   bell1 = (|11> + |00>)/sqrt2     bell2 = (|10> + |01>)/sqrt2
///   bell3 = (|11> - |00>)/sqrt2     bell4 = (|10> - |01>)/sqrt2  (singlet)
class InitialState {
public:
    enum class Kind { bell1, bell2, bell3, bell4, custom };

    InitialState() = default;
    static InitialState bell(int which);
    /// Throws invalid-argument unless |a|^2 + |b|^2 + |c|^2 + |d|^2 = 1 within 1e-10.
    static InitialState custom(std::array<Complex, 4> amplitudes);
    /// "bell1".."bell4" or "custom:a,b,c,d" with real amplitudes.
    static InitialState parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    std::array<Complex, 4> amplitudes() const noexcept;
    StateVector state() const;
    std::string name() const;

private:
    Kind kind_ = Kind::bell1;
    std::array<Complex, 4> custom_{};
};

struct OutputOptions {
    std::filesystem::path directory;  // empty: no files
    bool write_spectrum = false;      // index,energy,weight audit dump
};

struct RunConfig {
    ModelSpec model;
    InitialState initial_state;
    double t_max = 50.0;
    int n_samples = 500;
    double weight_threshold = 1e-4;
    bool renormalize_weights = false;
    LaguerreConfig propagator;
    bool oracle_check = false;
    OutputOptions outputs;
    SamplingPolicy sampling;
    std::uint64_t seed = 0;  // only consumed by randomized checks
    int threads = 0;         // 0: hardware concurrency
    /// Optional relabeling of bath spins (values 1..m) applied to every bath
    /// eigenstate before evolution; a symmetry check, empty by default.
    std::vector<int> bath_relabeling;

    void validate() const;
    std::vector<double> time_grid() const;
};

/// Parses the JSON config format (see README). Errors are ErrorKind::config.
RunConfig config_from_json(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical single-line JSON of the fully resolved config.
std::string to_json(const RunConfig& config);

}  // namespace spinbath
