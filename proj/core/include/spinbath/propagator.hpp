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

// Time evolution U(t) = exp(-iHt).
//
// The Laguerre propagator uses the generating function of the generalized
// Laguerre polynomials,
//
//   exp(-iHt) = (1 + it)^-(a+1) * sum_k (it / (1 + it))^k L_k^a(H),
//
// truncated at k_max, with L_k^a(H)|psi> built by the three-term recurrence
//   (k+1) L_{k+1} = (2k + 1 + a - H) L_k - (k + a) L_{k-1}.
// H is shifted by a lower spectral bound so the expansion sees a
// nonnegative spectrum; the shift comes back as the phase exp(-i shift t).
//
// DenseEvolver is the verification route: a full eigendecomposition of H.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinbath/model_hamiltonian.hpp"
#include "spinbath/spin_hilbert.hpp"

namespace spinbath {

struct LaguerreConfig {
    double alpha = 0.0;
    int k_max = 24;
    double dt = 0.1;                 // initial step before any halving
    double unitarity_tol = 1e-10;    // allowed | ||psi'|| - ||psi|| | per step
    double series_tol = 1e-12;       // scalar truncation error accepted by the dt pre-screen
    std::optional<double> spectral_shift;  // default: Gershgorin lower bound of H
    int max_halvings = 20;
    std::ostream* log = nullptr;     // one line per accepted step when set

    void validate() const;
};

/// Scalar generalized Laguerre polynomial L_k^alpha(x) by recurrence.
double laguerre_polynomial(int k, double alpha, double x);

/// Truncated scalar series approximating exp(-i x t).
Complex laguerre_series(double x, double t, double alpha, int k_max);

/// max |laguerre_series(x, t) - exp(-ixt)| over `samples` points of [0, width].
double series_error(double width, double t, double alpha, int k_max, int samples = 2048);

struct EvolutionStats {
    double accepted_dt = 0.0;        // largest substep actually used
    std::size_t steps = 0;
    int halvings = 0;
    double max_step_norm_deviation = 0.0;
    double max_energy_drift = 0.0;   // relative to max(1, |<H>(0)|)
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> norms;
    std::vector<double> energies;  // <H> at each time
    EvolutionStats stats;
};

/// Called once per grid time, in order.
using StateVisitor = std::function<void(std::size_t index, double time, const StateVector& state)>;

class LaguerrePropagator {
public:
    LaguerrePropagator(const ModelSpec& spec, LaguerreConfig cfg);
    LaguerrePropagator(SpinOperator hamiltonian, LaguerreConfig cfg);

    const SpinOperator& hamiltonian() const noexcept { return h_; }
    const LaguerreConfig& config() const noexcept { return cfg_; }
    double spectral_shift() const noexcept { return shift_; }
    /// Upper bound of the shifted spectrum, i.e. the x-range the series must cover.
    double spectral_width() const noexcept { return width_; }

    /// One truncated-series step of length dt. Throws step-size when the norm
    /// moves by more than unitarity_tol and numerical on non-finite output.
    /// Never renormalizes.
    StateVector step(const StateVector& state, double dt) const;

    /// Largest dt = cfg.dt / 2^j whose scalar truncation error over the shifted
    /// spectrum is within series_tol.
    double screened_dt() const noexcept { return screened_dt_; }

    /// Evolves through an ascending grid starting at 0, visiting each grid time.
    EvolutionStats evolve(const StateVector& state0, std::span<const double> times,
                          const StateVisitor& visit) const;

    Trajectory evolve(const StateVector& state0, std::span<const double> times) const;

private:
    SpinOperator h_;
    LaguerreConfig cfg_;
    double shift_ = 0.0;
    double width_ = 0.0;
    double screened_dt_ = 0.0;
};

/// Single Laguerre step of length cfg.dt.
StateVector laguerre_step(const ModelSpec& spec, const LaguerreConfig& cfg, const StateVector& state);

Trajectory evolve(const ModelSpec& spec, const LaguerreConfig& cfg, const StateVector& state0,
                  std::span<const double> times);

/// psi(t) = V exp(-i Lambda t) V^T psi(0) from a dense eigendecomposition of H.
class DenseEvolver {
public:
    explicit DenseEvolver(const ModelSpec& spec, int max_spins = kDefaultDenseSpinCap);
    explicit DenseEvolver(const Eigen::MatrixXd& hamiltonian);

    StateVector at(const StateVector& state0, double t) const;
    std::span<const double> energies() const noexcept {
        return {eigenvalues_.data(), static_cast<std::size_t>(eigenvalues_.size())};
    }

private:
    void decompose(const Eigen::MatrixXd& h);

    int n_spins_ = 0;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

Trajectory oracle_evolve(const ModelSpec& spec, const StateVector& state0, std::span<const double> times);

/// n_samples equally spaced times over [0, t_max].
std::vector<double> uniform_grid(double t_max, int n_samples);

}  // namespace spinbath
