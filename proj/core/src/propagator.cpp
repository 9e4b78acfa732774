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

#include "spinbath/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinbath/errors.hpp"

namespace spinbath {

void LaguerreConfig::validate() const {
    if (k_max < 1) throw_invalid("k_max must be >= 1");
    if (!(dt > 0.0)) throw_invalid("dt must be > 0");
    if (!(unitarity_tol > 0.0)) throw_invalid("unitarity_tol must be > 0");
    if (!(series_tol > 0.0)) throw_invalid("series_tol must be > 0");
    if (!(alpha >= 0.0)) throw_invalid("alpha must be >= 0");
    if (max_halvings < 0) throw_invalid("max_halvings must be >= 0");
}

double laguerre_polynomial(int k, double alpha, double x) {
    if (k < 0) throw_invalid("Laguerre order must be >= 0");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex laguerre_series(double x, double t, double alpha, int k_max) {
    const Complex it{0.0, t};
    const Complex z = it / (1.0 + it);
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    Complex zk = z;
    Complex acc = prev + z * cur;
    for (int k = 1; k < k_max; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        zk *= z;
        acc += zk * cur;
    }
    return std::pow(1.0 / (1.0 + it), alpha + 1.0) * acc;
}

double series_error(double width, double t, double alpha, int k_max, int samples) {
    samples = std::max(samples, 2);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double x = width * s / (samples - 1);
        const Complex exact = std::exp(Complex{0.0, -x * t});
        worst = std::max(worst, std::abs(laguerre_series(x, t, alpha, k_max) - exact));
    }
    return worst;
}

LaguerrePropagator::LaguerrePropagator(const ModelSpec& spec, LaguerreConfig cfg)
    : LaguerrePropagator(build_operator(spec, HamiltonianPart::Full), std::move(cfg)) {}

LaguerrePropagator::LaguerrePropagator(SpinOperator hamiltonian, LaguerreConfig cfg)
    : h_(std::move(hamiltonian)), cfg_(std::move(cfg)) {
    cfg_.validate();
    const SpectralBounds bounds = h_.gershgorin_bounds();
    shift_ = cfg_.spectral_shift.value_or(bounds.lower);
    width_ = std::max(0.0, bounds.upper - shift_);

    double dt = cfg_.dt;
    screened_dt_ = 0.0;
    for (int j = 0; j <= cfg_.max_halvings; ++j, dt *= 0.5) {
        if (series_error(width_, dt, cfg_.alpha, cfg_.k_max) <= cfg_.series_tol) {
            screened_dt_ = dt;
            break;
        }
    }
}

StateVector LaguerrePropagator::step(const StateVector& state, double dt) const {
    if (state.n_spins() != h_.n_spins()) throw_invalid("state/Hamiltonian dimension mismatch");
    if (dt == 0.0) return state;

    const std::size_t n = state.dim();
    const double alpha = cfg_.alpha;
    const Complex it{0.0, dt};
    const Complex z = it / (1.0 + it);
    const Complex prefactor =
        std::pow(1.0 / (1.0 + it), alpha + 1.0) * std::exp(Complex{0.0, -shift_ * dt});

    std::vector<Complex> prev(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<Complex> cur(n), next(n), hv(n), acc(n);

    // L_1 = (1 + alpha) - H'
    h_.apply(prev, hv);
    for (std::size_t i = 0; i < n; ++i) {
        cur[i] = (1.0 + alpha + shift_) * prev[i] - hv[i];
        acc[i] = prev[i] + z * cur[i];
    }
    Complex zk = z;
    for (int k = 1; k < cfg_.k_max; ++k) {
        h_.apply(cur, hv);
        const double a = 2.0 * k + 1.0 + alpha + shift_;
        const double b = k + alpha;
        const double inv = 1.0 / (k + 1.0);
        zk *= z;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = (a * cur[i] - hv[i] - b * prev[i]) * inv;
            acc[i] += zk * next[i];
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    for (auto& v : acc) v *= prefactor;

    StateVector out(state.n_spins(), std::move(acc));
    if (!out.all_finite()) {
        throw Error(ErrorKind::numerical, "non-finite amplitudes after Laguerre step (dt=" +
                                              std::to_string(dt) + ")");
    }
    const double deviation = std::abs(out.norm() - state.norm());
    if (deviation > cfg_.unitarity_tol) {
        std::ostringstream msg;
        msg << "Laguerre step dt=" << dt << " changed the norm by " << deviation
            << " (tolerance " << cfg_.unitarity_tol << "); halve dt";
        throw Error(ErrorKind::step_size, msg.str());
    }
    return out;
}

EvolutionStats LaguerrePropagator::evolve(const StateVector& state0, std::span<const double> times,
                                          const StateVisitor& visit) const {
    if (state0.n_spins() != h_.n_spins()) throw_invalid("state/Hamiltonian dimension mismatch");
    if (times.empty()) throw_invalid("empty time grid");
    if (times.front() < 0.0) throw_invalid("time grid must start at t >= 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw_invalid("time grid must be strictly ascending");
    }
    if (screened_dt_ == 0.0) {
        std::ostringstream msg;
        msg << "no step size down to dt=" << cfg_.dt / std::pow(2.0, cfg_.max_halvings)
            << " meets series_tol=" << cfg_.series_tol << " for spectral width " << width_;
        throw Error(ErrorKind::step_size, msg.str());
    }

    EvolutionStats stats;
    const double e0 = h_.expectation(state0);
    const double energy_scale = std::max(1.0, std::abs(e0));
    double dt_max = screened_dt_;
    StateVector psi = state0;
    double t_now = 0.0;

    for (std::size_t i = 0; i < times.size(); ++i) {
        const double target = times[i];
        while (t_now < target) {
            const double remaining = target - t_now;
            const double nsub = std::max(1.0, std::ceil(remaining / dt_max * (1.0 - 1e-12)));
            const double h = remaining / nsub;
            StateVector next;
            try {
                next = step(psi, h);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::step_size) throw;
                if (stats.halvings >= cfg_.max_halvings) {
                    std::ostringstream msg;
                    msg << e.what() << "; gave up at t=" << t_now << " after " << stats.halvings
                        << " halvings";
                    throw Error(ErrorKind::step_size, msg.str());
                }
                dt_max *= 0.5;
                ++stats.halvings;
                continue;
            }
            const double deviation = std::abs(next.norm() - psi.norm());
            psi = std::move(next);
            t_now = (nsub == 1.0) ? target : t_now + h;
            ++stats.steps;
            stats.accepted_dt = std::max(stats.accepted_dt, h);
            stats.max_step_norm_deviation = std::max(stats.max_step_norm_deviation, deviation);
            if (cfg_.log != nullptr) {
                *cfg_.log << "step " << stats.steps << " t=" << t_now << " dt=" << h
                          << " norm_dev=" << deviation
                          << " energy_drift=" << std::abs(h_.expectation(psi) - e0) << '\n';
            }
        }
        const double drift = std::abs(h_.expectation(psi) - e0) / energy_scale;
        stats.max_energy_drift = std::max(stats.max_energy_drift, drift);
        visit(i, target, psi);
    }
    return stats;
}

Trajectory LaguerrePropagator::evolve(const StateVector& state0, std::span<const double> times) const {
    Trajectory traj;
    traj.stats = evolve(state0, times, [&](std::size_t, double t, const StateVector& psi) {
        traj.times.push_back(t);
        traj.states.push_back(psi);
        traj.norms.push_back(psi.norm());
        traj.energies.push_back(h_.expectation(psi));
    });
    return traj;
}

StateVector laguerre_step(const ModelSpec& spec, const LaguerreConfig& cfg, const StateVector& state) {
    return LaguerrePropagator(spec, cfg).step(state, cfg.dt);
}

Trajectory evolve(const ModelSpec& spec, const LaguerreConfig& cfg, const StateVector& state0,
                  std::span<const double> times) {
    return LaguerrePropagator(spec, cfg).evolve(state0, times);
}

DenseEvolver::DenseEvolver(const ModelSpec& spec, int max_spins) {
    decompose(dense_matrix(spec, HamiltonianPart::Full, OperatorSpace::joint, max_spins));
}

DenseEvolver::DenseEvolver(const Eigen::MatrixXd& hamiltonian) { decompose(hamiltonian); }

void DenseEvolver::decompose(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) throw_invalid("Hamiltonian must be square");
    const auto dim = static_cast<std::size_t>(h.rows());
    n_spins_ = 0;
    while ((std::size_t{1} << n_spins_) < dim) ++n_spins_;
    if ((std::size_t{1} << n_spins_) != dim) throw_invalid("Hamiltonian dimension is not a power of two");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::numerical, "dense eigensolver failed to converge");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

StateVector DenseEvolver::at(const StateVector& state0, double t) const {
    if (state0.n_spins() != n_spins_) throw_invalid("state/Hamiltonian dimension mismatch");
    const auto n = static_cast<Eigen::Index>(state0.dim());
    Eigen::Map<const Eigen::VectorXcd> psi0(state0.amplitudes().data(), n);
    Eigen::VectorXcd c = eigenvectors_.transpose().cast<Complex>() * psi0;
    for (Eigen::Index k = 0; k < n; ++k) c(k) *= std::exp(Complex{0.0, -eigenvalues_(k) * t});
    const Eigen::VectorXcd psi = eigenvectors_.cast<Complex>() * c;
    return StateVector(n_spins_, std::vector<Complex>(psi.data(), psi.data() + n));
}

Trajectory oracle_evolve(const ModelSpec& spec, const StateVector& state0, std::span<const double> times) {
    const DenseEvolver evolver(spec);
    const SpinOperator h = build_operator(spec, HamiltonianPart::Full);
    Trajectory traj;
    const double e0 = h.expectation(state0);
    for (double t : times) {
        StateVector psi = evolver.at(state0, t);
        traj.times.push_back(t);
        traj.norms.push_back(psi.norm());
        traj.energies.push_back(h.expectation(psi));
        traj.stats.max_energy_drift = std::max(
            traj.stats.max_energy_drift, std::abs(traj.energies.back() - e0) / std::max(1.0, std::abs(e0)));
        traj.states.push_back(std::move(psi));
    }
    return traj;
}

std::vector<double> uniform_grid(double t_max, int n_samples) {
    if (!(t_max > 0.0)) throw_invalid("t_max must be > 0");
    if (n_samples < 2) throw_invalid("n_samples must be >= 2");
    std::vector<double> grid(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) grid[static_cast<std::size_t>(i)] = t_max * i / (n_samples - 1);
    return grid;
}

}  // namespace spinbath
