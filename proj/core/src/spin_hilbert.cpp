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

#include "spinbath/spin_hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinbath/errors.hpp"

namespace spinbath {
namespace {

constexpr int kMaxSpins = 30;

void check_spin_count(int n_spins) {
    if (n_spins < 0) throw_invalid("negative spin count");
    if (n_spins > kMaxSpins) {
        throw Error(ErrorKind::resource_limit,
                    "state over " + std::to_string(n_spins) + " spins exceeds the " +
                        std::to_string(kMaxSpins) + "-spin limit");
    }
}

void check_same_shape(const StateVector& a, const StateVector& b) {
    if (a.n_spins() != b.n_spins()) {
        throw_invalid("state dimension mismatch: " + std::to_string(a.n_spins()) + " vs " +
                      std::to_string(b.n_spins()) + " spins");
    }
}

std::size_t site_mask(int n_spins, Site site) {
    return std::size_t{1} << bit_position(n_spins, site);
}

}  // namespace

StateVector::StateVector() : n_spins_(0), amps_(1, Complex{1.0, 0.0}) {}

StateVector::StateVector(int n_spins) : n_spins_(n_spins) {
    check_spin_count(n_spins);
    amps_.assign(std::size_t{1} << n_spins, Complex{});
}

StateVector::StateVector(int n_spins, std::vector<Complex> amplitudes)
    : n_spins_(n_spins), amps_(std::move(amplitudes)) {
    check_spin_count(n_spins);
    if (amps_.size() != (std::size_t{1} << n_spins)) {
        throw_invalid("amplitude count " + std::to_string(amps_.size()) + " is not 2^" +
                      std::to_string(n_spins));
    }
}

StateVector StateVector::basis_state(int n_spins, std::size_t index) {
    StateVector s(n_spins);
    if (index >= s.dim()) throw_invalid("basis index out of range");
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

double StateVector::norm() const noexcept { return std::sqrt(norm_squared()); }

bool StateVector::all_finite() const noexcept {
    return std::all_of(amps_.begin(), amps_.end(), [](const Complex& a) {
        return std::isfinite(a.real()) && std::isfinite(a.imag());
    });
}

StateVector& StateVector::operator+=(const StateVector& other) {
    check_same_shape(*this, other);
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
    check_same_shape(*this, other);
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= other.amps_[i];
    return *this;
}

StateVector& StateVector::operator*=(Complex factor) noexcept {
    for (auto& a : amps_) a *= factor;
    return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(Complex factor, StateVector a) { return a *= factor; }

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    StateVector out(a.n_spins() + b.n_spins());
    const std::size_t db = b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; j < db; ++j) out[i * db + j] = a[i] * b[j];
    }
    return out;
}

int bit_position(int n_spins, Site site) {
    if (site.index < 1 || site.index > n_spins) {
        throw_invalid("site " + std::to_string(site.index) + " outside 1.." +
                      std::to_string(n_spins));
    }
    return n_spins - site.index;
}

std::size_t basis_index(std::span<const int> bits) {
    if (bits.size() > static_cast<std::size_t>(kMaxSpins)) {
        throw_invalid("too many bits for a basis index");
    }
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw_invalid("basis digit " + std::to_string(b) + " not in {0,1}");
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    return index;
}

StateVector apply_pauli(const StateVector& state, Site site, PauliAxis axis) {
    const std::size_t mask = site_mask(state.n_spins(), site);
    StateVector out(state.n_spins());
    const Complex i_unit{0.0, 1.0};
    for (std::size_t k = 0; k < state.dim(); ++k) {
        const bool up = (k & mask) != 0;
        switch (axis) {
        case PauliAxis::X:
            out[k ^ mask] = state[k];
            break;
        case PauliAxis::Y:
            // sigma_y|0> = -i|1>, sigma_y|1> = i|0>
            out[k ^ mask] = up ? i_unit * state[k] : -i_unit * state[k];
            break;
        case PauliAxis::Z:
            out[k] = up ? state[k] : -state[k];
            break;
        }
    }
    return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    check_same_shape(a, b);
    Complex acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double distance(const StateVector& a, const StateVector& b) {
    check_same_shape(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::norm(a[i] - b[i]);
    return std::sqrt(acc);
}

StateVector to_x_basis(const StateVector& state, std::span<const Site> sites) {
    const double r = 1.0 / std::sqrt(2.0);
    StateVector out = state;
    for (Site site : sites) {
        const std::size_t mask = site_mask(state.n_spins(), site);
        for (std::size_t k = 0; k < out.dim(); ++k) {
            if (k & mask) continue;
            const Complex down = out[k];
            const Complex up = out[k | mask];
            out[k | mask] = r * (up + down);
            out[k] = r * (up - down);
        }
    }
    return out;
}

StateVector permute_sites(const StateVector& state, std::span<const int> new_label) {
    const int n = state.n_spins();
    if (static_cast<int>(new_label.size()) != n) throw_invalid("permutation length mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int label : new_label) {
        if (label < 1 || label > n || seen[static_cast<std::size_t>(label)]) {
            throw_invalid("site relabeling is not a permutation of 1..N");
        }
        seen[static_cast<std::size_t>(label)] = true;
    }
    std::vector<std::size_t> from(static_cast<std::size_t>(n)), to(static_cast<std::size_t>(n));
    for (int s = 1; s <= n; ++s) {
        from[static_cast<std::size_t>(s - 1)] = site_mask(n, Site{s});
        to[static_cast<std::size_t>(s - 1)] = site_mask(n, Site{new_label[static_cast<std::size_t>(s - 1)]});
    }
    StateVector out(n);
    for (std::size_t k = 0; k < state.dim(); ++k) {
        std::size_t target = 0;
        for (std::size_t s = 0; s < from.size(); ++s) {
            if (k & from[s]) target |= to[s];
        }
        out[target] = state[k];
    }
    return out;
}

}  // namespace spinbath
