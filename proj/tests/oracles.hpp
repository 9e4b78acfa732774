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
// Independent reference constructions used only by the tests: Kronecker-built
// dense operators, Pade matrix exponentials and brute-force partial traces.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinbath/model_hamiltonian.hpp"
#include "spinbath/spin_hilbert.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Single-spin matrices in basis-index order (|0>, |1>), |1> = up.
inline MatrixXcd pauli(char axis) {
    MatrixXcd p = MatrixXcd::Zero(2, 2);
    const Complex i{0.0, 1.0};
    switch (axis) {
    case 'x': p(0, 1) = 1.0; p(1, 0) = 1.0; break;
    case 'y': p(1, 0) = -i; p(0, 1) = i; break;
    case 'z': p(0, 0) = -1.0; p(1, 1) = 1.0; break;
    default: p = MatrixXcd::Identity(2, 2);
    }
    return p;
}

// P on spin `site` (1-based, spin 1 leftmost) of an n-spin register.
inline MatrixXcd site_op(int n, int site, char axis) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int s = 1; s <= n; ++s) {
        const MatrixXcd f = s == site ? pauli(axis) : MatrixXcd::Identity(2, 2);
        MatrixXcd next = Eigen::kroneckerProduct(out, f).eval();
        out = next;
    }
    return out;
}

inline MatrixXcd hamiltonian(const spinbath::ModelSpec& p) {
    const int n = p.n_bath + 2;
    const long dim = 1L << n;
    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    auto X = [&](int s) { return site_op(n, s, 'x'); };
    auto Z = [&](int s) { return site_op(n, s, 'z'); };
    h += 0.5 * p.omega_s * (Z(1) + Z(2)) + p.beta * (X(1) + X(2)) + p.lambda_ss * X(1) * X(2);
    for (int i = 3; i <= n; ++i) {
        h += 0.5 * p.omega_b * Z(i) + p.beta * X(i);
        h += p.lambda_sb * (X(1) + X(2)) * X(i);
        for (int j = i + 1; j <= n; ++j) h += p.lambda_bb * X(i) * X(j);
    }
    return h;
}

inline VectorXcd to_eigen(const spinbath::StateVector& s) {
    VectorXcd v(static_cast<long>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<long>(i)) = s[i];
    return v;
}

inline spinbath::StateVector from_eigen(int n, const VectorXcd& v) {
    std::vector<Complex> a(v.data(), v.data() + v.size());
    return spinbath::StateVector(n, std::move(a));
}

// exp(-i H t) by scaling-and-squaring Pade.
inline VectorXcd evolve(const MatrixXcd& h, const VectorXcd& psi0, double t) {
    const MatrixXcd u = (Complex{0.0, -t} * h).exp();
    return u * psi0;
}

// Tr_B over the low `n - 2` bits, returned in (|11>,|10>,|01>,|00>) order.
inline Eigen::Matrix4cd partial_trace(const MatrixXcd& rho, int n) {
    const long bath = 1L << (n - 2);
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (long s = 0; s < 4; ++s)
        for (long sp = 0; sp < 4; ++sp)
            for (long b = 0; b < bath; ++b) out(3 - s, 3 - sp) += rho(s * bath + b, sp * bath + b);
    return out;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    Complex gauss() {
        std::normal_distribution<double> d;
        return {d(gen), d(gen)};
    }
    spinbath::StateVector state(int n) {
        spinbath::StateVector s(n);
        for (std::size_t i = 0; i < s.dim(); ++i) s[i] = gauss();
        s *= 1.0 / s.norm();
        return s;
    }
    // Random density matrix rho = A A^dag / Tr.
    Eigen::Matrix4cd density() {
        Eigen::Matrix4cd a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = gauss();
        Eigen::Matrix4cd r = a * a.adjoint();
        return r / r.trace().real();
    }
};

}  // namespace oracle
