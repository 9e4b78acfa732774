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

#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/spin_hilbert.hpp"

using namespace spinbath;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);
const Complex I{0.0, 1.0};

bool kind_is(ErrorKind k, auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

}  // namespace

TEST_CASE("basis index is big-endian with spin 1 first") {
    CHECK(basis_index(std::array{0, 0}) == 0);
    CHECK(basis_index(std::array{1, 0}) == 2);
    CHECK(basis_index(std::array{1, 1, 1, 1}) == 15);
    CHECK(basis_index(std::array{0, 1, 1}) == 3);
    CHECK(kind_is(ErrorKind::invalid_argument, [] { basis_index(std::array{0, 2}); }));
}

TEST_CASE("state vector construction") {
    StateVector scalar;
    CHECK(scalar.n_spins() == 0);
    CHECK(scalar.dim() == 1);
    CHECK(scalar[0] == Complex{1.0});

    const auto b = StateVector::basis_state(3, 5);
    CHECK(b.dim() == 8);
    CHECK(b.norm() == doctest::Approx(1.0));
    CHECK(b[5] == Complex{1.0});

    CHECK(kind_is(ErrorKind::invalid_argument, [] { StateVector(2, std::vector<Complex>(3)); }));
    CHECK(kind_is(ErrorKind::invalid_argument, [] { StateVector::basis_state(2, 4); }));
    CHECK(kind_is(ErrorKind::resource_limit, [] { StateVector(31); }));
}

TEST_CASE("pauli action on single spins") {
    const auto zero = StateVector::basis_state(1, 0);
    const auto one = StateVector::basis_state(1, 1);

    const auto x0 = apply_pauli(zero, Site{1}, PauliAxis::X);
    CHECK(distance(x0, one) == 0.0);

    CHECK(distance(apply_pauli(one, Site{1}, PauliAxis::Z), one) == 0.0);
    CHECK(distance(apply_pauli(zero, Site{1}, PauliAxis::Z), Complex{-1.0} * zero) == 0.0);

    // sigma_y = i sigma_x sigma_z with |1> up.
    CHECK(distance(apply_pauli(zero, Site{1}, PauliAxis::Y), Complex{-I} * one) == 0.0);
    CHECK(distance(apply_pauli(one, Site{1}, PauliAxis::Y), I * zero) == 0.0);
    const auto yxz = I * apply_pauli(apply_pauli(zero, Site{1}, PauliAxis::Z), Site{1}, PauliAxis::X);
    CHECK(distance(apply_pauli(zero, Site{1}, PauliAxis::Y), yxz) < 1e-15);

    CHECK(kind_is(ErrorKind::invalid_argument, [&] { apply_pauli(zero, Site{2}, PauliAxis::X); }));
    CHECK(kind_is(ErrorKind::invalid_argument, [&] { apply_pauli(zero, Site{0}, PauliAxis::X); }));
}

TEST_CASE("pauli on a multi-spin register targets the right bit") {
    // |010>: spin 2 up. X on spin 1 gives |110> = 6.
    const auto s = StateVector::basis_state(3, 2);
    CHECK(std::abs(apply_pauli(s, Site{1}, PauliAxis::X)[6] - Complex{1.0}) < 1e-15);
    CHECK(std::abs(apply_pauli(s, Site{3}, PauliAxis::X)[3] - Complex{1.0}) < 1e-15);
    CHECK(std::abs(apply_pauli(s, Site{2}, PauliAxis::Z)[2] - Complex{1.0}) < 1e-15);
}

TEST_CASE("inner products") {
    oracle::Rng rng(11);
    const auto psi = rng.state(3);
    CHECK(std::abs(inner_product(psi, psi) - Complex{1.0}) < 1e-14);
    CHECK(inner_product(StateVector::basis_state(2, 0), StateVector::basis_state(2, 3)) == Complex{0.0});

    StateVector bell1(2, {s2, 0, 0, s2});
    const auto xx = apply_pauli(apply_pauli(bell1, Site{1}, PauliAxis::X), Site{2}, PauliAxis::X);
    CHECK(std::abs(inner_product(bell1, xx) - Complex{1.0}) < 1e-15);

    CHECK(kind_is(ErrorKind::invalid_argument, [&] { inner_product(psi, bell1); }));
    CHECK(kind_is(ErrorKind::invalid_argument, [&] { psi + bell1; }));
}

TEST_CASE("tensor product puts the left factor in the high bits") {
    const auto a = StateVector::basis_state(1, 1);
    const auto b = StateVector::basis_state(2, 1);
    const auto ab = tensor_product(a, b);
    CHECK(ab.n_spins() == 3);
    CHECK(ab[5] == Complex{1.0});
    const auto with_scalar = tensor_product(a, StateVector{});
    CHECK(distance(with_scalar, a) == 0.0);
}

TEST_CASE("x-basis transform") {
    const auto zero = StateVector::basis_state(1, 0);
    const std::array sites{Site{1}};
    const auto x = to_x_basis(zero, sites);
    // Components written (up_x, down_x) = (bit 1, bit 0).
    CHECK(std::abs(x[1] - Complex{s2}) < 1e-15);
    CHECK(std::abs(x[0] - Complex{-s2}) < 1e-15);
    CHECK(std::abs(std::abs(x[0]) - s2) < 1e-15);

    StateVector plus(1, {s2, s2});
    const auto px = to_x_basis(plus, sites);
    CHECK(std::abs(px[1] - Complex{1.0}) < 1e-15);
    CHECK(std::abs(px[0]) < 1e-15);

    oracle::Rng rng(3);
    const auto psi = rng.state(4);
    const std::array some{Site{2}, Site{4}};
    CHECK(distance(to_x_basis(to_x_basis(psi, some), some), psi) < 1e-14);
    CHECK(to_x_basis(psi, some).norm() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(kind_is(ErrorKind::invalid_argument, [&] { to_x_basis(psi, std::array{Site{5}}); }));
}

TEST_CASE("x-basis transform matches the sigma_x eigenbasis") {
    // The image of the sigma_x = +1 eigenvector is the bit-1 basis vector on every listed site.
    oracle::Rng rng(5);
    const auto psi = rng.state(3);
    const std::array all{Site{1}, Site{2}, Site{3}};
    const auto x = to_x_basis(psi, all);
    for (int s = 1; s <= 3; ++s) {
        // <sigma_x^s> in z-basis equals <sigma_z^s> after the transform.
        const double ex = std::real(inner_product(psi, apply_pauli(psi, Site{s}, PauliAxis::X)));
        const double ez = std::real(inner_product(x, apply_pauli(x, Site{s}, PauliAxis::Z)));
        CHECK(ex == doctest::Approx(ez).epsilon(1e-13));
    }
}

TEST_CASE("site permutation") {
    // |100> with spin 1 moved to label 3 gives |001>.
    const auto s = StateVector::basis_state(3, 4);
    const auto p = permute_sites(s, std::array{3, 1, 2});
    CHECK(p[1] == Complex{1.0});
    oracle::Rng rng(8);
    const auto psi = rng.state(3);
    const auto back = permute_sites(permute_sites(psi, std::array{2, 3, 1}), std::array{3, 1, 2});
    CHECK(distance(back, psi) < 1e-15);
    CHECK(kind_is(ErrorKind::invalid_argument, [&] { permute_sites(psi, std::array{1, 1, 2}); }));
}
