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

#include "spinbath/model_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinbath/errors.hpp"

namespace spinbath {

void ModelSpec::validate() const {
    if (n_bath < 0) throw_invalid("n_bath must be >= 0");
    if (lambda_ss < 0.0 || lambda_bb < 0.0 || lambda_sb < 0.0) {
        throw_invalid("couplings lambda_ss, lambda_bb, lambda_sb must be >= 0");
    }
    if (!(temperature > 0.0)) throw_invalid("temperature must be > 0");
    for (double v : {omega_s, omega_b, beta, lambda_ss, lambda_bb, lambda_sb, temperature}) {
        if (!std::isfinite(v)) throw_invalid("model parameters must be finite");
    }
}

SpinOperator::SpinOperator(int n_spins)
    : n_spins_(n_spins), diag_(StateVector(n_spins).dim(), 0.0) {}

void SpinOperator::add_z(Site site, double coeff) {
    const std::size_t mask = std::size_t{1} << bit_position(n_spins_, site);
    for (std::size_t k = 0; k < diag_.size(); ++k) diag_[k] += (k & mask) ? coeff : -coeff;
}

void SpinOperator::add_x_string(std::span<const Site> sites, double coeff) {
    std::size_t mask = 0;
    for (Site s : sites) mask ^= std::size_t{1} << bit_position(n_spins_, s);
    if (coeff == 0.0) return;
    if (mask == 0) {
        for (auto& d : diag_) d += coeff;
        return;
    }
    auto it = std::find_if(flips_.begin(), flips_.end(),
                           [mask](const FlipTerm& f) { return f.mask == mask; });
    if (it != flips_.end()) {
        it->coeff += coeff;
    } else {
        flips_.push_back({mask, coeff});
    }
}

void SpinOperator::apply(std::span<const Complex> in, std::span<Complex> out) const {
    const std::size_t n = diag_.size();
    if (in.size() != n || out.size() != n) throw_invalid("operator/state dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) out[k] = diag_[k] * in[k];
    for (const FlipTerm& f : flips_) {
        const std::size_t mask = f.mask;
        const double c = f.coeff;
        for (std::size_t k = 0; k < n; ++k) out[k] += c * in[k ^ mask];
    }
}

StateVector SpinOperator::apply(const StateVector& state) const {
    if (state.n_spins() != n_spins_) {
        throw_invalid("operator acts on " + std::to_string(n_spins_) + " spins, state has " +
                      std::to_string(state.n_spins()));
    }
    StateVector out(n_spins_);
    apply(state.amplitudes(), out.amplitudes());
    return out;
}

double SpinOperator::expectation(const StateVector& state) const {
    return inner_product(state, apply(state)).real();
}

SpectralBounds SpinOperator::gershgorin_bounds() const {
    double radius = 0.0;
    for (const FlipTerm& f : flips_) radius += std::abs(f.coeff);
    const auto [lo, hi] = std::minmax_element(diag_.begin(), diag_.end());
    return {*lo - radius, *hi + radius};
}

Eigen::MatrixXd SpinOperator::to_dense() const {
    const auto n = static_cast<Eigen::Index>(diag_.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) m(k, k) = diag_[static_cast<std::size_t>(k)];
    for (const FlipTerm& f : flips_) {
        for (std::size_t k = 0; k < diag_.size(); ++k) {
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ f.mask)) += f.coeff;
        }
    }
    return m;
}

namespace {

void add_subsystem_terms(const ModelSpec& spec, SpinOperator& op, int first) {
    const Site s1{first}, s2{first + 1};
    op.add_z(s1, 0.5 * spec.omega_s);
    op.add_z(s2, 0.5 * spec.omega_s);
    const Site one[] = {s1};
    const Site two[] = {s2};
    const Site both[] = {s1, s2};
    op.add_x_string(one, spec.beta);
    op.add_x_string(two, spec.beta);
    op.add_x_string(both, spec.lambda_ss);
}

void add_bath_terms(const ModelSpec& spec, SpinOperator& op, int first) {
    const int last = first + spec.n_bath - 1;
    for (int i = first; i <= last; ++i) {
        op.add_z(Site{i}, 0.5 * spec.omega_b);
        const Site single[] = {Site{i}};
        op.add_x_string(single, spec.beta);
        for (int j = i + 1; j <= last; ++j) {
            const Site pair[] = {Site{i}, Site{j}};
            op.add_x_string(pair, spec.lambda_bb);
        }
    }
}

void add_coupling_terms(const ModelSpec& spec, SpinOperator& op) {
    for (int i = 3; i <= spec.n_spins(); ++i) {
        const Site a[] = {Site{1}, Site{i}};
        const Site b[] = {Site{2}, Site{i}};
        op.add_x_string(a, spec.lambda_sb);
        op.add_x_string(b, spec.lambda_sb);
    }
}

}  // namespace

SpinOperator build_operator(const ModelSpec& spec, HamiltonianPart part, OperatorSpace space) {
    spec.validate();
    if (space == OperatorSpace::local) {
        if (part == HamiltonianPart::S) {
            SpinOperator op(2);
            add_subsystem_terms(spec, op, 1);
            return op;
        }
        if (part == HamiltonianPart::B) {
            SpinOperator op(spec.n_bath);
            add_bath_terms(spec, op, 1);
            return op;
        }
    }
    SpinOperator op(spec.n_spins());
    if (part == HamiltonianPart::S || part == HamiltonianPart::Full) add_subsystem_terms(spec, op, 1);
    if (part == HamiltonianPart::B || part == HamiltonianPart::Full) add_bath_terms(spec, op, 3);
    if (part == HamiltonianPart::SB || part == HamiltonianPart::Full) add_coupling_terms(spec, op);
    return op;
}

namespace {

StateVector apply_part(const ModelSpec& spec, HamiltonianPart part, const StateVector& state) {
    if (state.n_spins() != spec.n_spins()) {
        throw_invalid("state has " + std::to_string(state.n_spins()) + " spins, model needs " +
                      std::to_string(spec.n_spins()));
    }
    return build_operator(spec, part).apply(state);
}

}  // namespace

StateVector apply_h_s(const ModelSpec& spec, const StateVector& state) {
    return apply_part(spec, HamiltonianPart::S, state);
}

StateVector apply_h_b(const ModelSpec& spec, const StateVector& state) {
    return apply_part(spec, HamiltonianPart::B, state);
}

StateVector apply_h_sb(const ModelSpec& spec, const StateVector& state) {
    return apply_part(spec, HamiltonianPart::SB, state);
}

StateVector apply_h(const ModelSpec& spec, const StateVector& state) {
    return apply_part(spec, HamiltonianPart::Full, state);
}

Eigen::MatrixXd dense_matrix(const ModelSpec& spec, HamiltonianPart part, OperatorSpace space,
                             int max_spins) {
    spec.validate();
    int spins = spec.n_spins();
    if (space == OperatorSpace::local && part == HamiltonianPart::S) spins = 2;
    if (space == OperatorSpace::local && part == HamiltonianPart::B) spins = spec.n_bath;
    if (spins > max_spins) {
        throw Error(ErrorKind::resource_limit,
                    "dense matrix over " + std::to_string(spins) + " spins exceeds cap of " +
                        std::to_string(max_spins));
    }
    return build_operator(spec, part, space).to_dense();
}

}  // namespace spinbath
