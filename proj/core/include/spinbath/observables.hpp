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

// Two-spin reduced density matrices and the quantities read off them.
//
// ReducedDensityMatrix uses the ordered basis (|11>, |10>, |01>, |00>) and
// SingleSpinMatrix the order (|1>, |0>), so entry labels read like rho_11,
// rho_10, rho_01, rho_00. Note this is the reverse of basis-index order.

#include <array>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "spinbath/spin_hilbert.hpp"

namespace spinbath {

struct ReducedDensityMatrix {
    Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();
};

struct SingleSpinMatrix {
    Eigen::Matrix2cd entries = Eigen::Matrix2cd::Zero();
};

struct WeightedState {
    double weight = 0.0;
    std::reference_wrapper<const StateVector> state;
};

/// Row/column of the 4x4 matrix for the two subsystem bits (spin 1 high).
constexpr int rdm_row(unsigned subsystem_bits) noexcept { return 3 - static_cast<int>(subsystem_bits); }

/// Adds weight * Tr_B |psi><psi| to `acc` (raw, in rdm_row order).
void accumulate_reduced_density(Eigen::Matrix4cd& acc, double weight, const StateVector& state);

/// rho_S = sum_n w_n Tr_B |Psi_n><Psi_n|, divided by sum_n w_n so that the
/// result has unit trace even when the ensemble was truncated.
ReducedDensityMatrix ensemble_reduced_density(std::span<const WeightedState> members);

/// |psi><psi| for a two-spin state.
ReducedDensityMatrix pure_density(const StateVector& two_spin_state);

/// Partial trace over the other spin; keep must be 1 or 2.
SingleSpinMatrix sub_reduce(const ReducedDensityMatrix& rho, int keep);

/// (<sigma_x>, <sigma_y>) = (rho_10 + rho_01, i(rho_10 - rho_01)), <sigma_z> = rho_11 - rho_00.
std::array<double, 3> polarization(const SingleSpinMatrix& rho);

/// Pauli matrix in (|1>, |0>) order.
Eigen::Matrix2cd pauli_matrix(PauliAxis axis);

/// <sigma_axis (x) sigma_axis> = Tr(rho sigma (x) sigma).
double two_point(const ReducedDensityMatrix& rho, PauliAxis axis);

/// C_aa = <sigma_a^1 sigma_a^2> - <sigma_a^1><sigma_a^2>.
double pair_correlation(const ReducedDensityMatrix& rho, PauliAxis axis);

/// Wootters concurrence via the Hermitian form sqrt(rho) rho~ sqrt(rho).
/// Throws numerical when rho has an eigenvalue below -1e-8.
double concurrence(const ReducedDensityMatrix& rho);

/// Same quantity from the non-Hermitian product rho * rho~ directly; throws
/// numerical when that product has an eigenvalue below -1e-8.
double concurrence_from_product(const ReducedDensityMatrix& rho);

/// 2|ad - bc| for a|00> + b|01> + c|10> + d|11>; requires unit norm within 1e-10.
double concurrence_pure(Complex a, Complex b, Complex c, Complex d);

struct ObservableRecord {
    double time = 0.0;
    std::array<double, 3> pol1{};
    std::array<double, 3> pol2{};
    double c_xx = 0.0;
    double c_yy = 0.0;
    double c_zz = 0.0;
    double concurrence = 0.0;
};

ObservableRecord make_record(double time, const ReducedDensityMatrix& rho);

/// Throws numerical unless rho is Hermitian and unit-trace within `tol` and
/// has no eigenvalue below -1e-9.
void check_density_matrix(const ReducedDensityMatrix& rho, double tol = 1e-10);

/// Throws numerical if any ObservableRecord range invariant is violated.
void check_record(const ObservableRecord& record, double slack = 1e-9);

}  // namespace spinbath
