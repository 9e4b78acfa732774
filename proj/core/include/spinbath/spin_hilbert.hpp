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

// Multi-spin state vectors and single-site Pauli primitives.
//
// Basis convention (used everywhere in spinbath):
//   * a basis index is the binary number b_1 b_2 ... b_N with spin 1 in the
//     most significant bit;
//   * bit value 1 is spin "up" (sigma_z = +1), bit value 0 is spin "down".
// Spins 1 and 2 are the central pair, spins 3..N form the bath, so a joint
// index splits as (subsystem bits << n_bath) | bath bits.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spinbath {

using Complex = std::complex<double>;

/// 1-based spin label: 1, 2 are the subsystem, 3..N the bath.
struct Site {
    int index = 1;
};

enum class PauliAxis { X, Y, Z };

class StateVector {
public:
    /// Zero-spin state: a single amplitude equal to 1.
    StateVector();
    /// All-zero vector over n_spins spins.
    explicit StateVector(int n_spins);
    StateVector(int n_spins, std::vector<Complex> amplitudes);

    static StateVector basis_state(int n_spins, std::size_t index);

    int n_spins() const noexcept { return n_spins_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    std::span<Complex> amplitudes() noexcept { return amps_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }

    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const noexcept;
    double norm() const noexcept;
    bool all_finite() const noexcept;

    StateVector& operator+=(const StateVector& other);
    StateVector& operator-=(const StateVector& other);
    StateVector& operator*=(Complex factor) noexcept;

private:
    int n_spins_ = 0;
    std::vector<Complex> amps_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex factor, StateVector a);

/// |a> (x) |b>; the spins of `a` take the high bits.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Bit position of a site inside an n-spin index (spin 1 -> n-1).
int bit_position(int n_spins, Site site);

/// Index of the basis state with the given per-spin bits (spin 1 first).
std::size_t basis_index(std::span<const int> bits);

StateVector apply_pauli(const StateVector& state, Site site, PauliAxis axis);

/// <a|b>, conjugate-linear in a.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Euclidean distance ||a - b||.
double distance(const StateVector& a, const StateVector& b);

/// Applies U = (1/sqrt2)[[1, 1], [1, -1]] on each listed site, with U written
/// in (up, down) = (|1>, |0>) component order. U is self-inverse, and the
/// +1 eigenstate of sigma_x maps onto bit value 1 ("up" along x).
StateVector to_x_basis(const StateVector& state, std::span<const Site> sites);

/// Relabels spins: spin s of `state` becomes spin new_label[s - 1].
/// `new_label` must be a permutation of 1..N.
StateVector permute_sites(const StateVector& state, std::span<const int> new_label);

}  // namespace spinbath
