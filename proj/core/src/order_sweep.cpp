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

#include "spinbath/order_sweep.hpp"

#include <cmath>
#include <ostream>

#include "spinbath/driver.hpp"
#include "spinbath/format.hpp"

namespace spinbath {

std::vector<OrderSweepPoint> order_sweep(const RunConfig& base, std::span<const double> grid,
                                         const SamplingPolicy& policy, std::optional<int> bin) {
    if (grid.empty()) throw_invalid("order sweep needs at least one lambda_bb value");
    const int b = bin.value_or(half_filling_bin(base.model.n_bath));
    if (b < 0 || b > base.model.n_bath) throw_invalid("order bin outside 0..n_bath");

    std::vector<OrderSweepPoint> out;
    out.reserve(grid.size());
    for (double lambda : grid) {
        RunConfig cfg = with_parameter(base, SweepParameter::lambda_bb, lambda);
        const RunResult r = run(cfg);
        const SampledProbability p = sample_bin(r.histograms, b, policy);
        out.push_back({lambda, p.mean, p.stddev, b, r.metadata.ensemble_size});
    }
    return out;
}

void write_order_sweep(std::ostream& out, std::span<const OrderSweepPoint> points) {
    out << "lambda_bb,p_half,p_half_stderr_over_time\n";
    for (const auto& p : points) {
        out << format_real(p.lambda_bb) << ',' << format_real(p.p_half) << ',' << format_real(p.p_half_stddev) << '\n';
    }
}

}  // namespace spinbath
