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

// Bath ordering along x: P(n) = Tr_S sum_m w_m |<n||Psi_m>|^2, where ||n>
// collects the x-basis bath product states with n spins up along x.

#include <cstddef>
#include <span>
#include <vector>

#include "spinbath/observables.hpp"
#include "spinbath/spin_hilbert.hpp"

namespace spinbath {

struct OrderHistogram {
    std::vector<double> probabilities;  // index n = number of x-up bath spins, 0..m
    double time = 0.0;
    double lambda_bb = 0.0;

    double total() const noexcept;
};

/// Adds weight * P_psi(n) into `bins` (size n_bath + 1) for one joint state.
void accumulate_order(std::span<double> bins, double weight, const StateVector& state, int n_bath);

/// Weighted histogram over the ensemble, divided by the weight sum.
OrderHistogram order_histogram(std::span<const WeightedState> members, int n_bath, double time,
                               double lambda_bb);

/// How a single P(n) number is read off a time series of histograms.
struct SamplingPolicy {
    enum class Mode { time_average, instant };
    Mode mode = Mode::time_average;
    double transient_fraction = 0.1;  // leading share of the window dropped before averaging
    double instant_time = 0.0;        // used by Mode::instant (nearest grid time)
};

struct SampledProbability {
    double mean = 0.0;
    double stddev = 0.0;  // spread over the sampled times; 0 for instant sampling
    std::size_t samples = 0;
};

SampledProbability sample_bin(std::span<const OrderHistogram> series, int bin, const SamplingPolicy& policy);

/// The half-filling bin m/2; for odd m the lower of (m-1)/2, (m+1)/2 unless `upper`.
int half_filling_bin(int n_bath, bool upper = false);

}  // namespace spinbath
