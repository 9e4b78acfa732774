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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "spinbath/model_hamiltonian.hpp"
#include "spinbath/spin_hilbert.hpp"

namespace spinbath {

struct BathEigenpair {
    double energy = 0.0;
    StateVector state;  // over the m bath spins
};

/// Full dense diagonalization of H_B on the bath space, sorted by energy.
/// m = 0 yields the single pair (0, scalar 1).
std::vector<BathEigenpair> diagonalize_bath(const ModelSpec& spec,
                                            int max_bath_spins = kDefaultDenseSpinCap);

/// w_n = exp(-E_n/T) / Z, evaluated with energies shifted by E_min.
std::vector<double> boltzmann_weights(std::span<const double> energies, double temperature);
std::vector<double> boltzmann_weights(std::span<const BathEigenpair> pairs, double temperature);

struct EnsembleMember {
    double weight = 0.0;
    double energy = 0.0;
    std::size_t eigen_index = 0;  // position in the energy-sorted spectrum
    StateVector state;
};

struct ThermalEnsemble {
    std::vector<EnsembleMember> members;  // weight descending
    double partition_renorm = 0.0;        // sum of retained raw weights
    double threshold = 0.0;
    std::size_t total_states = 0;         // 2^m before truncation

    std::size_t size() const noexcept { return members.size(); }
    double discarded_mass() const noexcept { return 1.0 - partition_renorm; }
};

/// Keeps members with w_n >= threshold (inclusive). Ties in weight are ordered
/// by energy, then eigen index. With `renormalize`, stored weights are divided
/// by partition_renorm; partition_renorm itself always holds the raw sum.
ThermalEnsemble truncate(std::span<const double> weights, std::span<const BathEigenpair> pairs,
                         double threshold, bool renormalize = false);

/// Number of weights >= threshold.
std::size_t count_above(std::span<const double> weights, double threshold);

/// diagonalize_bath + boltzmann_weights + truncate.
ThermalEnsemble prepare_thermal_ensemble(const ModelSpec& spec, double threshold,
                                         bool renormalize = false);

/// Audit dump with header "index,energy,weight".
void write_spectrum(std::ostream& out, std::span<const BathEigenpair> pairs,
                    std::span<const double> weights);

}  // namespace spinbath
