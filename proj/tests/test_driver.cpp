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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "spinbath/driver.hpp"
#include "spinbath/io.hpp"
#include "spinbath/order_sweep.hpp"

using namespace spinbath;

namespace {

RunConfig small_config(int m = 2) {
    RunConfig cfg;
    cfg.model.n_bath = m;
    cfg.t_max = 5.0;
    cfg.n_samples = 26;
    cfg.threads = 1;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("spinbath_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

constexpr std::array<Column, 10> kAllColumns = {Column::sx1, Column::sy1, Column::sz1, Column::sx2, Column::sy2,
                                                 Column::sz2, Column::cxx, Column::cyy, Column::czz,
                                                 Column::concurrence};

}  // namespace

TEST_CASE("initial states") {
    const double s = 1.0 / std::sqrt(2.0);
    const auto b1 = InitialState::bell(1).amplitudes();
    CHECK(b1[0] == Complex{s});
    CHECK(b1[3] == Complex{s});
    const auto b4 = InitialState::parse("bell4").state();
    CHECK(b4[1] == Complex{-s});
    CHECK(b4[2] == Complex{s});
    const auto c = InitialState::parse("custom:0,0.6,0.8,0");
    CHECK(c.kind() == InitialState::Kind::custom);
    CHECK(c.state()[2] == Complex{0.8});
    CHECK_THROWS_AS(InitialState::parse("custom:1,1,0,0"), Error);
    CHECK_THROWS_AS(InitialState::parse("bell5"), Error);
    CHECK_THROWS_AS(InitialState::bell(0), Error);
}

TEST_CASE("config parsing") {
    const auto cfg = config_from_json(R"({"model": {"n_bath": 3, "lambda_bb": 2.5}, "initial_state": "bell2",
        "t_max": 10, "n_samples": 11, "propagator": {"alpha": 1, "k_max": 20},
        "sampling": {"mode": "instant", "instant_time": 4}})");
    CHECK(cfg.model.n_bath == 3);
    CHECK(cfg.model.lambda_bb == 2.5);
    CHECK(cfg.model.lambda_sb == 1.0);
    CHECK(cfg.initial_state.kind() == InitialState::Kind::bell2);
    CHECK(cfg.propagator.alpha == 1.0);
    CHECK(cfg.propagator.k_max == 20);
    CHECK(cfg.sampling.mode == SamplingPolicy::Mode::instant);
    CHECK(cfg.time_grid().size() == 11);

    const auto again = config_from_json(to_json(cfg));
    CHECK(to_json(again) == to_json(cfg));

    const auto custom = config_from_json(R"({"initial_state": "custom", "custom_amplitudes": [0, [0, 1], 0, 0]})");
    CHECK(custom.initial_state.state()[1] == Complex{0.0, 1.0});

    auto config_error = [](const char* text) {
        try {
            config_from_json(text);
        } catch (const Error& e) {
            return e.kind() == ErrorKind::config;
        }
        return false;
    };
    CHECK(config_error("{"));
    CHECK(config_error(R"({"t_max": -1})"));
    CHECK(config_error(R"({"n_samples": 1})"));
    CHECK(config_error(R"({"weight_threshold": 1.5})"));
    CHECK(config_error(R"({"model": {"n_bath": 2, "gamma": 1}})"));
    CHECK(config_error(R"({"bogus": 1})"));
    CHECK(config_error(R"({"initial_state": "custom", "custom_amplitudes": [1, 1, 0, 0]})"));
    CHECK(config_error(R"({"model": {"temperature": 0}})"));
    CHECK(config_error(R"({"t_max": "long"})"));
    CHECK_THROWS_AS(load_config("/nonexistent/spinbath.json"), Error);
}

TEST_CASE("run produces consistent series") {
    auto cfg = small_config(3);
    cfg.oracle_check = true;
    const auto r = run(cfg);
    REQUIRE(r.records.size() == 26);
    REQUIRE(r.histograms.size() == 26);
    CHECK(r.metadata.ensemble_size >= 1);
    CHECK(r.metadata.total_bath_states == 8);
    REQUIRE(r.metadata.oracle_max_deviation.has_value());
    CHECK(*r.metadata.oracle_max_deviation < 1e-8);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        CHECK(r.records[i].time == r.histograms[i].time);
        CHECK(r.histograms[i].total() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(r.densities[i].entries.trace() - Complex{1.0}) < 1e-10);
    }
    CHECK(r.records[0].c_xx == doctest::Approx(1.0));
    CHECK(r.records[0].concurrence == doctest::Approx(1.0));
}

TEST_CASE("singlet with a coupled bath stays frozen") {
    for (double lsb : {0.0, 1.0, 3.0}) {
        auto cfg = small_config(3);
        cfg.initial_state = InitialState::bell(4);
        cfg.model.lambda_sb = lsb;
        const auto r = run(cfg);
        for (Column c : kAllColumns) {
            for (const auto& rec : r.records) {
                CHECK(std::abs(column_value(rec, c) - column_value(r.records[0], c)) < 1e-8);
            }
        }
    }
}

TEST_CASE("decoupled bath reproduces the isolated pair") {
    for (int k : {1, 2, 3}) {
        auto cfg = small_config(3);
        cfg.initial_state = InitialState::bell(k);
        cfg.model.lambda_sb = 0.0;
        const auto r = run(cfg);
        const auto iso = isolated_reference(cfg);
        for (Column c : kAllColumns) CHECK(suppression_metric(r.records, iso, c) < 1e-8);
        // The isolated curves are not trivially constant.
        double spread = 0.0;
        for (const auto& rec : iso) spread = std::max(spread, std::abs(rec.c_zz - iso[0].c_zz));
        CHECK(spread > 1e-3);
    }
}

TEST_CASE("isolated reference against a Kronecker-built oracle") {
    auto cfg = small_config(0);
    cfg.initial_state = InitialState::bell(2);
    const auto iso = isolated_reference(cfg);
    ModelSpec p = cfg.model;
    p.n_bath = 0;
    const auto h = oracle::hamiltonian(p);
    const auto psi0 = oracle::to_eigen(cfg.initial_state.state());
    for (const auto& rec : iso) {
        const auto psi = oracle::evolve(h, psi0, rec.time);
        const Eigen::MatrixXcd rho = psi * psi.adjoint();
        const Eigen::MatrixXcd xx = oracle::site_op(2, 1, 'x') * oracle::site_op(2, 2, 'x');
        const auto x1 = oracle::site_op(2, 1, 'x');
        const auto x2 = oracle::site_op(2, 2, 'x');
        const double cxx = (rho * xx).trace().real() - (rho * x1).trace().real() * (rho * x2).trace().real();
        CHECK(rec.c_xx == doctest::Approx(cxx).epsilon(1e-10));
        const auto y1 = oracle::site_op(2, 1, 'y');
        CHECK(rec.pol1[1] == doctest::Approx((rho * y1).trace().real()).epsilon(1e-10));
    }
}

TEST_CASE("suppression metric") {
    auto cfg = small_config(2);
    const auto iso = isolated_reference(cfg);
    CHECK(suppression_metric(iso, iso, Column::cxx) == 0.0);
    auto shifted = iso;
    for (auto& r : shifted) r.c_yy += 0.5;
    CHECK(suppression_metric(shifted, iso, Column::cyy) == doctest::Approx(0.5));
    std::vector<ObservableRecord> short_series(iso.begin(), iso.begin() + 3);
    CHECK_THROWS_AS(suppression_metric(short_series, iso, Column::cxx), Error);
    auto moved = iso;
    moved[1].time += 0.1;
    CHECK_THROWS_AS(suppression_metric(moved, iso, Column::cxx), Error);

    CHECK(parse_column("czz") == Column::czz);
    CHECK(std::string(column_name(Column::sy2)) == "sy2");
    CHECK_THROWS_AS(parse_column("cxy"), Error);
}

TEST_CASE("single-value sweep equals a run") {
    auto cfg = small_config(2);
    const std::vector<double> one = {2.0};
    const auto outcomes = sweep(cfg, SweepParameter::lambda_bb, one);
    REQUIRE(outcomes.size() == 1);
    REQUIRE(outcomes[0].ok());
    cfg.model.lambda_bb = 2.0;
    const auto direct = run(cfg);
    for (std::size_t i = 0; i < direct.records.size(); ++i) {
        for (Column c : kAllColumns) {
            CHECK(column_value(direct.records[i], c) == column_value(outcomes[0].result->records[i], c));
        }
    }
    const auto iso = isolated_reference(cfg);
    CHECK(outcomes[0].metrics[0] == suppression_metric(direct.records, iso, Column::cxx));
}

TEST_CASE("sweep keeps going past a failing value") {
    auto cfg = small_config(2);
    const std::vector<double> temps = {0.1, -1.0, 0.2};
    const auto outcomes = sweep(cfg, SweepParameter::temperature, temps);
    REQUIRE(outcomes.size() == 3);
    CHECK(outcomes[0].ok());
    CHECK(!outcomes[1].ok());
    CHECK(outcomes[1].error_kind == ErrorKind::invalid_argument);
    CHECK(outcomes[2].ok());

    const std::vector<double> sizes = {1, 2};
    const auto by_m = sweep(cfg, SweepParameter::n_bath, sizes);
    CHECK(by_m[1].result->metadata.total_bath_states == 4);
    CHECK_THROWS_AS(with_parameter(cfg, SweepParameter::n_bath, 1.5), Error);
    CHECK(parse_sweep_parameter("n_bath") == SweepParameter::n_bath);
    CHECK_THROWS_AS(parse_sweep_parameter("omega"), Error);
    CHECK_THROWS_AS(sweep(cfg, SweepParameter::lambda_bb, std::vector<double>{}), Error);
}

TEST_CASE("member failures carry the member index") {
    auto cfg = small_config(2);
    cfg.propagator.dt = 50.0;
    cfg.propagator.max_halvings = 0;
    try {
        run(cfg);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::step_size);
        CHECK(std::string(e.what()).find("ensemble member 0") != std::string::npos);
    }
}

TEST_CASE("parallel and serial runs agree bit for bit") {
    auto cfg = small_config(3);
    cfg.weight_threshold = 1e-8;
    const auto serial = run(cfg);
    cfg.threads = 4;
    const auto parallel = run(cfg);
    REQUIRE(serial.metadata.ensemble_size > 1);
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK((serial.densities[i].entries - parallel.densities[i].entries).norm() == 0.0);
        CHECK(serial.histograms[i].probabilities == parallel.histograms[i].probabilities);
    }
}

TEST_CASE("output files are deterministic and self-describing") {
    auto dir = scratch("determinism");
    auto cfg = small_config(2);
    cfg.outputs.directory = dir;
    cfg.outputs.write_spectrum = true;
    cfg.threads = 2;
    write_run_outputs(cfg, run(cfg));
    const auto first = slurp(dir / "timeseries.csv");
    write_run_outputs(cfg, run(cfg));
    CHECK(slurp(dir / "timeseries.csv") == first);

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    REQUIRE(line.rfind("# config ", 0) == 0);
    const auto embedded = config_from_json(line.substr(9));
    CHECK(to_json(embedded) == to_json(cfg));
    while (std::getline(lines, line) && line[0] == '#') {
    }
    CHECK(line == "t,sx1,sy1,sz1,sx2,sy2,sz2,cxx,cyy,czz,concurrence,p0,p1,p2");
    std::getline(lines, line);
    CHECK(std::count(line.begin(), line.end(), ',') == 13);
    CHECK(first.find("wall") == std::string::npos);
    CHECK(std::filesystem::exists(dir / "spectrum.csv"));

    const std::vector<double> values = {1.0, 3.0};
    const auto sweep_dir = scratch("sweep");
    write_sweep_outputs(sweep_dir, SweepParameter::lambda_bb, sweep(small_config(2), SweepParameter::lambda_bb, values));
    CHECK(std::filesystem::exists(sweep_dir / "lambda_bb_1.csv"));
    CHECK(std::filesystem::exists(sweep_dir / "lambda_bb_3_isolated.csv"));
    const auto summary = slurp(sweep_dir / "summary.csv");
    CHECK(summary.rfind("lambda_bb,ensemble_size,rms_cxx,rms_cyy,rms_czz,rms_concurrence,status\n", 0) == 0);
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(sweep_dir);
}

TEST_CASE("format of reals") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_real(-2.5e-13) == "-2.5e-13");
}

TEST_CASE("order sweep") {
    auto cfg = small_config(4);
    cfg.t_max = 3.0;
    cfg.n_samples = 16;
    const std::vector<double> one = {2.0};
    const auto pts = order_sweep(cfg, one, cfg.sampling);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].bin == 2);
    cfg.model.lambda_bb = 2.0;
    const auto r = run(cfg);
    const auto direct = sample_bin(r.histograms, 2, cfg.sampling);
    CHECK(pts[0].p_half == direct.mean);

    // Relabeling the bath leaves the curve unchanged.
    auto relabeled = small_config(4);
    relabeled.t_max = 3.0;
    relabeled.n_samples = 16;
    relabeled.bath_relabeling = {3, 1, 4, 2};
    const std::vector<double> grid = {0.5, 3.0};
    auto base = small_config(4);
    base.t_max = 3.0;
    base.n_samples = 16;
    const auto plain = order_sweep(base, grid, cfg.sampling);
    const auto perm = order_sweep(relabeled, grid, cfg.sampling);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(plain[i].p_half - perm[i].p_half) < 1e-10);
    CHECK(plain.size() == 2);

    std::ostringstream os;
    write_order_sweep(os, plain);
    CHECK(os.str().rfind("lambda_bb,p_half,p_half_stderr_over_time\n", 0) == 0);
    CHECK_THROWS_AS(order_sweep(base, grid, cfg.sampling, 9), Error);
}

TEST_CASE("table writer") {
    std::ostringstream os;
    write_table1(os, reproduce_table1());
    const auto s = os.str();
    CHECK(s.find("temperature,threshold,computed,reference,match\n") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 20);
}
