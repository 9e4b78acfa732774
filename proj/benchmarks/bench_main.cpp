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

#include <random>

#include <benchmark/benchmark.h>

#include "spinbath/model_hamiltonian.hpp"
#include "spinbath/observables.hpp"
#include "spinbath/propagator.hpp"
#include "spinbath/thermal_ensemble.hpp"

using namespace spinbath;

namespace {

ModelSpec spec_for(int n_spins) {
    ModelSpec p;
    p.n_bath = n_spins - 2;
    p.lambda_bb = 6.0;
    return p;
}

StateVector random_state(int n) {
    std::mt19937_64 gen(42);
    std::normal_distribution<double> g;
    StateVector s(n);
    for (std::size_t i = 0; i < s.dim(); ++i) s[i] = Complex{g(gen), g(gen)};
    s *= 1.0 / s.norm();
    return s;
}

void BM_ApplyH(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto h = build_operator(spec_for(n), HamiltonianPart::Full);
    const auto psi = random_state(n);
    std::vector<Complex> out(psi.dim());
    for (auto _ : state) {
        h.apply(psi.amplitudes(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * psi.dim() * h.flip_term_count()));
}
BENCHMARK(BM_ApplyH)->DenseRange(6, 14, 2);

void BM_LaguerreStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const LaguerrePropagator prop(spec_for(n), LaguerreConfig{});
    const double dt = prop.screened_dt();
    auto psi = random_state(n);
    for (auto _ : state) {
        psi = prop.step(psi, dt);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_LaguerreStep)->DenseRange(6, 14, 2);

void BM_DenseOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto spec = spec_for(n);
    for (auto _ : state) {
        DenseEvolver ev(spec);
        benchmark::DoNotOptimize(ev.energies().data());
    }
}
BENCHMARK(BM_DenseOracle)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_BathDiagonalization(benchmark::State& state) {
    ModelSpec p;
    p.n_bath = static_cast<int>(state.range(0));
    p.lambda_bb = 4.0;
    for (auto _ : state) benchmark::DoNotOptimize(diagonalize_bath(p).data());
}
BENCHMARK(BM_BathDiagonalization)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Concurrence(benchmark::State& state) {
    ReducedDensityMatrix rho;
    rho.entries = pure_density(random_state(2)).entries * 0.7 + 0.3 / 4.0 * Eigen::Matrix4cd::Identity();
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

}  // namespace

BENCHMARK_MAIN();
