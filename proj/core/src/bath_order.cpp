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

#include "spinbath/bath_order.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "spinbath/errors.hpp"

namespace spinbath {

double OrderHistogram::total() const noexcept {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

void accumulate_order(std::span<double> bins, double weight, const StateVector& state, int n_bath) {
    if (state.n_spins() != n_bath + 2) throw_invalid("state does not match the bath size");
    if (bins.size() != static_cast<std::size_t>(n_bath) + 1) throw_invalid("histogram has wrong bin count");
    std::vector<Site> bath_sites;
    for (int s = 3; s <= state.n_spins(); ++s) bath_sites.push_back(Site{s});
    const StateVector x = to_x_basis(state, bath_sites);
    const std::size_t bath_mask = (std::size_t{1} << n_bath) - 1;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        bins[static_cast<std::size_t>(std::popcount(k & bath_mask))] += weight * std::norm(x[k]);
    }
}

OrderHistogram order_histogram(std::span<const WeightedState> members, int n_bath, double time,
                               double lambda_bb) {
    if (members.empty()) throw_invalid("empty ensemble");
    OrderHistogram h;
    h.time = time;
    h.lambda_bb = lambda_bb;
    h.probabilities.assign(static_cast<std::size_t>(n_bath) + 1, 0.0);
    double total = 0.0;
    for (const auto& m : members) {
        if (!(m.weight > 0.0)) throw_invalid("ensemble weights must be positive");
        accumulate_order(h.probabilities, m.weight, m.state.get(), n_bath);
        total += m.weight;
    }
    for (auto& p : h.probabilities) p /= total;
    return h;
}

SampledProbability sample_bin(std::span<const OrderHistogram> series, int bin, const SamplingPolicy& policy) {
    if (series.empty()) throw_invalid("empty histogram series");
    if (bin < 0 || static_cast<std::size_t>(bin) >= series.front().probabilities.size()) {
        throw_invalid("histogram bin out of range");
    }
    const auto b = static_cast<std::size_t>(bin);
    SampledProbability out;
    if (policy.mode == SamplingPolicy::Mode::instant) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < series.size(); ++i) {
            if (std::abs(series[i].time - policy.instant_time) <
                std::abs(series[best].time - policy.instant_time)) {
                best = i;
            }
        }
        out.mean = series[best].probabilities[b];
        out.samples = 1;
        return out;
    }
    if (!(policy.transient_fraction >= 0.0 && policy.transient_fraction < 1.0)) {
        throw_invalid("transient_fraction must lie in [0, 1)");
    }
    const double t0 = series.front().time;
    const double cut = t0 + policy.transient_fraction * (series.back().time - t0);
    double sum = 0.0, sum2 = 0.0;
    for (const auto& h : series) {
        if (h.time < cut) continue;
        sum += h.probabilities[b];
        sum2 += h.probabilities[b] * h.probabilities[b];
        ++out.samples;
    }
    const auto n = static_cast<double>(out.samples);
    out.mean = sum / n;
    out.stddev = std::sqrt(std::max(0.0, sum2 / n - out.mean * out.mean));
    return out;
}

int half_filling_bin(int n_bath, bool upper) {
    if (n_bath < 0) throw_invalid("n_bath must be >= 0");
    return (n_bath % 2 == 0 || !upper) ? n_bath / 2 : n_bath / 2 + 1;
}

}  // namespace spinbath
