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

#include "spinbath/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spinbath/errors.hpp"

namespace spinbath {
namespace {

// sigma (x) sigma in the (|11>, |10>, |01>, |00>) order.
Eigen::Matrix4cd two_spin_pauli(PauliAxis axis) {
    const Eigen::Matrix2cd s = pauli_matrix(axis);
    Eigen::Matrix4cd out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = s(a, c) * s(b, d);
    return out;
}

Eigen::Matrix4cd spin_flipped(const Eigen::Matrix4cd& rho) {
    const Eigen::Matrix4cd yy = two_spin_pauli(PauliAxis::Y);
    return yy * rho.conjugate() * yy;
}

double combine_roots(std::array<double, 4> lam) {
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

void reject_negative(double value, const char* what) {
    if (value < -1e-8) {
        std::ostringstream msg;
        msg << "eigenvalue " << value << " of " << what << " is negative; density matrix is corrupted";
        throw Error(ErrorKind::numerical, msg.str());
    }
}

}  // namespace

void accumulate_reduced_density(Eigen::Matrix4cd& acc, double weight, const StateVector& state) {
    if (state.n_spins() < 2) throw_invalid("reduced density needs at least the two subsystem spins");
    const std::size_t bath_dim = state.dim() / 4;
    const auto amps = state.amplitudes();
    for (unsigned s = 0; s < 4; ++s) {
        const Complex* row = amps.data() + s * bath_dim;
        for (unsigned sp = s; sp < 4; ++sp) {
            const Complex* col = amps.data() + sp * bath_dim;
            Complex sum{};
            for (std::size_t b = 0; b < bath_dim; ++b) sum += row[b] * std::conj(col[b]);
            sum *= weight;
            acc(rdm_row(s), rdm_row(sp)) += sum;
            if (sp != s) acc(rdm_row(sp), rdm_row(s)) += std::conj(sum);
        }
    }
}

ReducedDensityMatrix ensemble_reduced_density(std::span<const WeightedState> members) {
    if (members.empty()) throw_invalid("empty ensemble");
    const int n = members.front().state.get().n_spins();
    ReducedDensityMatrix rho;
    double total = 0.0;
    for (const auto& m : members) {
        if (m.state.get().n_spins() != n) throw_invalid("ensemble members differ in dimension");
        if (!(m.weight > 0.0)) throw_invalid("ensemble weights must be positive");
        accumulate_reduced_density(rho.entries, m.weight, m.state.get());
        total += m.weight;
    }
    rho.entries /= total;
    return rho;
}

ReducedDensityMatrix pure_density(const StateVector& two_spin_state) {
    if (two_spin_state.n_spins() != 2) throw_invalid("pure_density expects a two-spin state");
    ReducedDensityMatrix rho;
    accumulate_reduced_density(rho.entries, 1.0, two_spin_state);
    return rho;
}

SingleSpinMatrix sub_reduce(const ReducedDensityMatrix& rho, int keep) {
    if (keep != 1 && keep != 2) throw_invalid("keep must be 1 or 2");
    SingleSpinMatrix out;
    // Row of the 4x4 matrix is 2 * i1 + i2 with i = 0 for "up"; same for the 2x2.
    for (int k = 0; k < 2; ++k)
        for (int kp = 0; kp < 2; ++kp)
            for (int o = 0; o < 2; ++o) {
                const int r = (keep == 1) ? 2 * k + o : 2 * o + k;
                const int c = (keep == 1) ? 2 * kp + o : 2 * o + kp;
                out.entries(k, kp) += rho.entries(r, c);
            }
    return out;
}

Eigen::Matrix2cd pauli_matrix(PauliAxis axis) {
    const Complex i{0.0, 1.0};
    Eigen::Matrix2cd m;
    switch (axis) {
    case PauliAxis::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case PauliAxis::Y: m << 0.0, -i, i, 0.0; break;
    case PauliAxis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

std::array<double, 3> polarization(const SingleSpinMatrix& rho) {
    const Complex r11 = rho.entries(0, 0), r10 = rho.entries(0, 1);
    const Complex r01 = rho.entries(1, 0), r00 = rho.entries(1, 1);
    const Complex i{0.0, 1.0};
    return {(r10 + r01).real(), (i * (r10 - r01)).real(), (r11 - r00).real()};
}

double two_point(const ReducedDensityMatrix& rho, PauliAxis axis) {
    return (rho.entries * two_spin_pauli(axis)).trace().real();
}

double pair_correlation(const ReducedDensityMatrix& rho, PauliAxis axis) {
    const auto p1 = polarization(sub_reduce(rho, 1));
    const auto p2 = polarization(sub_reduce(rho, 2));
    const auto k = static_cast<std::size_t>(axis);
    return two_point(rho, axis) - p1[k] * p2[k];
}

double concurrence(const ReducedDensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_es(rho.entries);
    reject_negative(rho_es.eigenvalues().minCoeff(), "rho");
    const Eigen::Vector4d root = rho_es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd sqrt_rho =
        rho_es.eigenvectors() * root.cast<Complex>().asDiagonal() * rho_es.eigenvectors().adjoint();
    // sqrt(rho) rho~ sqrt(rho) = A A^dag; the lambda_i are the singular values of A.
    const Eigen::Matrix4cd a = sqrt_rho * two_spin_pauli(PauliAxis::Y) * sqrt_rho.conjugate();
    const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(a).singularValues();
    return combine_roots({sv(0), sv(1), sv(2), sv(3)});
}

double concurrence_from_product(const ReducedDensityMatrix& rho) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rho.entries * spin_flipped(rho.entries), false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const double mu = es.eigenvalues()(i).real();
        reject_negative(mu, "rho * rho~");
        lam[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, mu));
    }
    return combine_roots(lam);
}

double concurrence_pure(Complex a, Complex b, Complex c, Complex d) {
    const double norm2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    if (std::abs(norm2 - 1.0) > 1e-10) throw_invalid("concurrence_pure needs a normalized state");
    return 2.0 * std::abs(a * d - b * c);
}

ObservableRecord make_record(double time, const ReducedDensityMatrix& rho) {
    ObservableRecord rec;
    rec.time = time;
    rec.pol1 = polarization(sub_reduce(rho, 1));
    rec.pol2 = polarization(sub_reduce(rho, 2));
    rec.c_xx = two_point(rho, PauliAxis::X) - rec.pol1[0] * rec.pol2[0];
    rec.c_yy = two_point(rho, PauliAxis::Y) - rec.pol1[1] * rec.pol2[1];
    rec.c_zz = two_point(rho, PauliAxis::Z) - rec.pol1[2] * rec.pol2[2];
    rec.concurrence = concurrence(rho);
    return rec;
}

void check_density_matrix(const ReducedDensityMatrix& rho, double tol) {
    const double herm = (rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff();
    const Complex tr = rho.entries.trace();
    std::ostringstream msg;
    if (herm > tol) msg << "reduced density matrix not Hermitian (residual " << herm << ")";
    else if (std::abs(tr - 1.0) > tol) msg << "reduced density matrix trace " << tr << " != 1";
    else {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.entries, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9) {
            msg << "reduced density matrix has eigenvalue " << es.eigenvalues().minCoeff();
        }
    }
    if (!msg.str().empty()) throw Error(ErrorKind::numerical, msg.str());
}

void check_record(const ObservableRecord& r, double slack) {
    auto in = [slack](double v, double lo, double hi) { return v >= lo - slack && v <= hi + slack; };
    bool ok = in(r.c_xx, -2, 2) && in(r.c_yy, -2, 2) && in(r.c_zz, -2, 2) && in(r.concurrence, 0, 1);
    for (int k = 0; k < 3; ++k) ok = ok && in(r.pol1[k], -1, 1) && in(r.pol2[k], -1, 1);
    if (!ok) {
        throw Error(ErrorKind::numerical,
                    "observable out of physical range at t=" + std::to_string(r.time));
    }
}

}  // namespace spinbath
