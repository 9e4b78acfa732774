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

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "spinbath/bath_order.hpp"
#include "spinbath/config.hpp"

namespace spinbath {

struct OrderSweepPoint {
    double lambda_bb = 0.0;
    double p_half = 0.0;
    double p_half_stddev = 0.0;
    int bin = 0;
    std::size_t ensemble_size = 0;
};

/// P(m/2) against lambda_bb, one full run per grid value, read off with `policy`.
/// `bin` overrides the half-filling bin.
std::vector<OrderSweepPoint> order_sweep(const RunConfig& base, std::span<const double> grid,
                                         const SamplingPolicy& policy, std::optional<int> bin = std::nullopt);

/// Header "lambda_bb,p_half,p_half_stderr_over_time".
void write_order_sweep(std::ostream& out, std::span<const OrderSweepPoint> points);

}  // namespace spinbath
