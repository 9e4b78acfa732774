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

#include "spinbath/thermal_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinbath/errors.hpp"
#include "spinbath/format.hpp"

namespace spinbath {

std::vector<BathEigenpair> diagonalize_bath(const ModelSpec& spec, int max_bath_spins) {
    spec.validate();
    if (spec.n_bath == 0) return {BathEigenpair{0.0, StateVector{}}};

    const Eigen::MatrixXd hb =
        dense_matrix(spec, HamiltonianPart::B, OperatorSpace::local, max_bath_spins);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hb);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::numerical, "bath eigensolver failed to converge");
    }

    std::vector<BathEigenpair> pairs;
    pairs.reserve(static_cast<std::size_t>(hb.rows()));
    for (Eigen::Index n = 0; n < hb.rows(); ++n) {
        std::vector<Complex> amps(static_cast<std::size_t>(hb.rows()));
        for (Eigen::Index k = 0; k < hb.rows(); ++k) {
            amps[static_cast<std::size_t>(k)] = solver.eigenvectors()(k, n);
        }
        pairs.push_back({solver.eigenvalues()(n), StateVector(spec.n_bath, std::move(amps))});
    }
    // Eigen already returns ascending eigenvalues; keep the contract explicit.
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return a.energy < b.energy; });
    return pairs;
}

std::vector<double> boltzmann_weights(std::span<const double> energies, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw_invalid("temperature must be positive and finite");
    }
    if (energies.empty()) throw_invalid("no energies given");
    const double e_min = *std::min_element(energies.begin(), energies.end());
    std::vector<double> w(energies.size());
    for (std::size_t n = 0; n < energies.size(); ++n) {
        w[n] = std::exp(-(energies[n] - e_min) / temperature);
    }
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= z;
    return w;
}

std::vector<double> boltzmann_weights(std::span<const BathEigenpair> pairs, double temperature) {
    std::vector<double> energies;
    energies.reserve(pairs.size());
    for (const auto& p : pairs) energies.push_back(p.energy);
    return boltzmann_weights(energies, temperature);
}

std::size_t count_above(std::span<const double> weights, double threshold) {
    return static_cast<std::size_t>(
        std::count_if(weights.begin(), weights.end(), [threshold](double w) { return w >= threshold; }));
}

ThermalEnsemble truncate(std::span<const double> weights, std::span<const BathEigenpair> pairs,
                         double threshold, bool renormalize) {
    if (weights.size() != pairs.size()) throw_invalid("weights and eigenpairs differ in length");
    if (!(threshold > 0.0 && threshold < 1.0)) throw_invalid("weight threshold must lie in (0, 1)");

    std::vector<std::size_t> kept;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        if (weights[n] >= threshold) kept.push_back(n);
    }
    if (kept.empty()) {
        throw_invalid("weight threshold " + std::to_string(threshold) + " retains no bath states");
    }
    std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        if (pairs[a].energy != pairs[b].energy) return pairs[a].energy < pairs[b].energy;
        return a < b;
    });

    ThermalEnsemble ens;
    ens.threshold = threshold;
    ens.total_states = pairs.size();
    for (std::size_t n : kept) ens.partition_renorm += weights[n];
    for (std::size_t n : kept) {
        const double w = renormalize ? weights[n] / ens.partition_renorm : weights[n];
        ens.members.push_back({w, pairs[n].energy, n, pairs[n].state});
    }
    return ens;
}

ThermalEnsemble prepare_thermal_ensemble(const ModelSpec& spec, double threshold, bool renormalize) {
    const auto pairs = diagonalize_bath(spec);
    const auto weights = boltzmann_weights(pairs, spec.temperature);
    return truncate(weights, pairs, threshold, renormalize);
}

void write_spectrum(std::ostream& out, std::span<const BathEigenpair> pairs,
                    std::span<const double> weights) {
    if (weights.size() != pairs.size()) throw_invalid("weights and eigenpairs differ in length");
    out << "index,energy,weight\n";
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        out << n << ',' << format_real(pairs[n].energy) << ',' << format_real(weights[n]) << '\n';
    }
}

}  // namespace spinbath
