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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinbath/spin_hilbert.hpp"

namespace spinbath {

/// Parameters of H = H_S + H_B + H_SB for two central spins and m bath spins.
///
///   H_S  = w_s/2 (Z1 + Z2) + beta (X1 + X2) + l_ss X1 X2
///   H_B  = sum_i [w_b/2 Z_i + beta X_i] + l_bb sum_{i<j} X_i X_j   (all pairs)
///   H_SB = l_sb sum_i (X1 + X2) X_i
///
/// Energies are in units with hbar = k_B = 1.
struct ModelSpec {
    int n_bath = 4;
    double omega_s = 0.8;
    double omega_b = 1.0;
    double beta = 0.1;
    double lambda_ss = 1.0;
    double lambda_bb = 1.0;
    double lambda_sb = 1.0;
    double temperature = 0.1;

    int n_spins() const noexcept { return n_bath + 2; }

    /// Throws invalid-argument for negative couplings, n_bath < 0 or T <= 0.
    void validate() const;
};

enum class HamiltonianPart { S, B, SB, Full };

/// `joint` acts on all N spins. `local` restricts S to the two central spins
/// and B to the m bath spins; SB and Full only exist on the joint space.
enum class OperatorSpace { joint, local };

/// Real spectral interval [lower, upper] containing every eigenvalue.
struct SpectralBounds {
    double lower = 0.0;
    double upper = 0.0;
    double width() const noexcept { return upper - lower; }
};

/// Matrix-free operator of the form  sum_k z_k Z_{site_k} + sum_f c_f X-string_f.
/// Z terms are folded into a precomputed diagonal; every X string is a bit-flip
/// mask with a real coefficient, so application costs O(#masks * 2^N).
class SpinOperator {
public:
    explicit SpinOperator(int n_spins);

    int n_spins() const noexcept { return n_spins_; }
    std::size_t dim() const noexcept { return diag_.size(); }

    void add_z(Site site, double coeff);
    /// Adds coeff * prod_{s in sites} X_s. Terms with equal masks are merged.
    void add_x_string(std::span<const Site> sites, double coeff);

    /// out = H * in. `out` must not alias `in`.
    void apply(std::span<const Complex> in, std::span<Complex> out) const;
    StateVector apply(const StateVector& state) const;

    /// <state|H|state>, real for Hermitian H.
    double expectation(const StateVector& state) const;

    /// Gershgorin disc bound: diagonal entries +/- sum of |flip coefficients|.
    SpectralBounds gershgorin_bounds() const;

    Eigen::MatrixXd to_dense() const;

    std::size_t flip_term_count() const noexcept { return flips_.size(); }

private:
    struct FlipTerm {
        std::size_t mask;
        double coeff;
    };

    int n_spins_;
    std::vector<double> diag_;
    std::vector<FlipTerm> flips_;
};

SpinOperator build_operator(const ModelSpec& spec, HamiltonianPart part,
                            OperatorSpace space = OperatorSpace::joint);

StateVector apply_h_s(const ModelSpec& spec, const StateVector& state);
StateVector apply_h_b(const ModelSpec& spec, const StateVector& state);
StateVector apply_h_sb(const ModelSpec& spec, const StateVector& state);
StateVector apply_h(const ModelSpec& spec, const StateVector& state);

inline constexpr int kDefaultDenseSpinCap = 14;

/// Dense real-symmetric matrix in the basis-index order of spin_hilbert.hpp.
/// Throws resource-limit when the operator acts on more than `max_spins` spins.
Eigen::MatrixXd dense_matrix(const ModelSpec& spec, HamiltonianPart part,
                             OperatorSpace space = OperatorSpace::joint,
                             int max_spins = kDefaultDenseSpinCap);

}  // namespace spinbath
