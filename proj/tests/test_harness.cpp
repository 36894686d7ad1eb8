#include <doctest.h>

#include "ocfield/contention.hpp"
#include "ocfield/harness.hpp"

#include <cmath>
#include <map>

using namespace ocfield;

namespace {

ScenarioConfig quick(const std::string& json) { return parse_config(json); }

}  // namespace

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(-50.0) == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  for (const double db : {-57.0, -50.0, -3.0, 0.0, 3.0, 20.0}) {
    CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-13).scale(1.0));
  }
  CHECK(db_to_linear(-INFINITY) == 0.0);
}

TEST_CASE("config parsing") {
  const ScenarioConfig d;
  CHECK(d.params.alpha == 3.5);
  CHECK(d.params.d_r == 10.0);
  CHECK(d.params.sigma2 == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(d.params.beta == doctest::Approx(db_to_linear(3.0)));

  const ScenarioConfig c = quick(R"j({"alpha": 4, "beta_db": 0, "d_r": 1, "sigma2_db": "-inf",
      "antennas": [2, 3], "receivers": ["OC", "MRC", "PZF(1)"], "lambda": [0.001, 0.002],
      "n_trials": 500, "seed": 12, "expected_count": 50, "threads": 2, "output": "x.csv"})j");
  CHECK(c.params.alpha == 4.0);
  CHECK(c.params.beta == 1.0);
  CHECK(c.params.sigma2 == 0.0);
  CHECK(c.antennas == std::vector<int>{2, 3});
  CHECK(c.receivers == std::vector<Receiver>{Receiver::oc(), Receiver::mrc(), Receiver::pzf(1)});
  CHECK(c.lambda_grid == std::vector<double>{0.001, 0.002});
  CHECK(c.n_trials == 500);
  CHECK(c.master_seed == 12);
  CHECK(c.expected_count == 50.0);
  CHECK(c.workers == 2);
  CHECK(c.output_path == "x.csv");

  CHECK(quick(R"j({"sigma2": 0.25})j").params.sigma2 == 0.25);
  CHECK(quick(R"j({"sigma2_db": -50})j").params.sigma2 == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(quick(R"j({"normalized": true})j").normalized);

  // values on top of a base are kept unless overridden
  ScenarioConfig base;
  base.params.alpha = 4.0;
  base.n_trials = 7;
  const ScenarioConfig layered = parse_config(R"j({"n_trials": 9})j", base);
  CHECK(layered.params.alpha == 4.0);
  CHECK(layered.n_trials == 9);
}

TEST_CASE("config errors name the field") {
  const std::map<std::string, std::string> bad = {
      {"[1, 2]", "object"},
      {"{not json", "JSON"},
      {R"j({"alpah": 3})j", "alpah"},
      {R"j({"alpha": "x"})j", "alpha"},
      {R"j({"alpha": 2})j", "alpha"},
      {R"j({"antennas": []})j", "antennas"},
      {R"j({"antennas": [0]})j", "antennas"},
      {R"j({"antennas": [1.5]})j", "antennas"},
      {R"j({"receivers": ["XYZ"]})j", "receivers"},
      {R"j({"antennas": [2], "receivers": ["PZF(2)"]})j", "receivers"},
      {R"j({"lambda": [-1]})j", "lambda"},
      {R"j({"n_trials": 0})j", "n_trials"},
      {R"j({"seed": -1})j", "seed"},
      {R"j({"sigma2": 1, "sigma2_db": 0})j", "sigma2"},
      {R"j({"outage_lo": 0.5, "outage_hi": 0.4})j", "outage"},
      {R"j({"threads": -1})j", "threads"},
      {R"j({"normalized": 1})j", "normalized"},
  };
  for (const auto& [text, field] : bad) {
    CAPTURE(text);
    try {
      parse_config(text);
      FAIL("accepted");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  }
}

TEST_CASE("analytic run") {
  ScenarioConfig c = quick(R"j({"alpha": 3.5, "beta_db": 0, "d_r": 1, "sigma2": 0, "antennas": [1]})j");
  // lambda Delta gamma^(2/alpha) = 1 with gamma = 1
  c.lambda_grid = {1.0 / delta_const(3.5).value};
  const std::vector<AnalyticRow> one = run_analytic(c);
  REQUIRE(one.size() == 1);
  CHECK(one[0].outage == doctest::Approx(0.632121).epsilon(1e-6));

  c = quick(R"j({"antennas": [1, 2, 3], "lambda_points": 10})j");
  const std::vector<AnalyticRow> rows = run_analytic(c);
  CHECK(rows.size() == 30);
  for (const AnalyticRow& r : rows) {
    SystemParams p = c.params;
    p.L = r.L;
    p.lambda = r.lambda;
    CHECK(r.outage == outage_cdf(p));
    CHECK(r.throughput == throughput_density(p));
  }
}

TEST_CASE("auto grid spans the requested outage range") {
  const ScenarioConfig c = quick(R"j({"antennas": [1, 4], "sigma2_db": -50})j");
  for (const int L : c.antennas) {
    const std::vector<double> grid = lambda_grid_for(c, L);
    REQUIRE(grid.size() == 10);
    SystemParams p = c.params;
    p.L = L;
    p.lambda = 0.0;
    const double floor = outage_cdf(p);
    p.lambda = grid.front();
    CHECK(outage_cdf(p) == doctest::Approx(floor + (1.0 - floor) * 0.01).epsilon(1e-9));
    p.lambda = grid.back();
    CHECK(outage_cdf(p) == doctest::Approx(floor + (1.0 - floor) * 0.99).epsilon(1e-9));
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  }
  // L = 1 sits on a noise floor of about 0.06, so its grid starts above it
  SystemParams p1 = c.params;
  p1.L = 1;
  p1.lambda = lambda_grid_for(c, 1).front();
  CHECK(outage_cdf(p1) > 0.06);
  // noise floor above the requested upper end
  CHECK_THROWS_AS(lambda_grid_for(quick(R"j({"sigma2_db": 10})j"), 1), ConfigError);
}

TEST_CASE("simulation rows and CSV stability") {
  ScenarioConfig c = quick(R"j({"antennas": [2, 3], "receivers": ["OC", "ZF"], "lambda_points": 3,
      "n_trials": 400, "seed": 3})j");
  const std::vector<SimulationRow> rows = run_simulation(c);
  CHECK(rows.size() == 2 * 3 * 2);
  for (const SimulationRow& r : rows) {
    if (r.receiver == Receiver::oc()) {
      CHECK(std::isfinite(r.analytic_outage));
    } else {
      CHECK(std::isnan(r.analytic_outage));
    }
    CHECK(r.mc.n_trials == 400);
    CHECK(r.mc.master_seed == 3);
  }
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind(std::string(kSimulationHeader) + "\n", 0) == 0);
  CHECK(csv.back() == '\n');
  CHECK(csv == to_csv(run_simulation(c)));
  c.workers = 1;
  CHECK(csv == to_csv(run_simulation(c)));

  c.n_trials = 1;
  for (const SimulationRow& r : run_simulation(c)) CHECK(r.mc.std_error == 0.0);
}

TEST_CASE("format_double round-trips") {
  for (const double v : {0.1, 1.0 / 3.0, 6309.5734448019325, 1e-300, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("optimize") {
  ScenarioConfig c = quick(R"j({"antennas": [1, 2, 3, 4, 5, 6, 7, 8], "sigma2": 0, "normalized": true})j");
  const std::vector<OptimizeRow> rows = run_optimize(c);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].g == 1.0);
  CHECK(rows[0].lambda_max == 1.0);
  CHECK(rows[0].t_max == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  for (const OptimizeRow& r : rows) {
    CHECK(r.closed_form);
    CHECK(r.lambda_max == g_of_l(r.L));
  }
  CHECK(to_csv(rows).find("closed_form") != std::string::npos);

  c = quick(R"j({"antennas": [2], "sigma2_db": -57})j");
  const std::vector<OptimizeRow> grid = run_optimize(c);
  REQUIRE(grid.size() == 1);
  CHECK_FALSE(grid[0].closed_form);
  CHECK(std::isnan(grid[0].g));
  CHECK(to_csv(grid).find("grid_search") != std::string::npos);

  c.normalized = true;
  CHECK_THROWS_AS(run_optimize(c), ConfigError);
}

TEST_CASE("figure presets") {
  const FigurePreset f1 = figure_preset(1);
  CHECK(f1.kind == FigureKind::Simulation);
  CHECK(f1.config.antennas == std::vector<int>{1, 2, 3, 4});
  CHECK(f1.config.params.sigma2 == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(f1.config.n_trials == 100000);
  CHECK(f1.config.expected_count == 100.0);

  const FigurePreset f2 = figure_preset(2);
  CHECK(f2.config.antennas == std::vector<int>{3});
  CHECK(f2.config.params.sigma2 == 0.0);
  CHECK(f2.config.receivers.size() == 4);

  const FigurePreset f4 = figure_preset(4);
  CHECK(f4.kind == FigureKind::Optimize);
  CHECK(f4.config.normalized);

  CHECK_THROWS_AS(figure_preset(0), ConfigError);
  CHECK_THROWS_AS(figure_preset(5), ConfigError);
}

TEST_CASE("figure 3: throughput argmax increases with L") {
  const FigurePreset f3 = figure_preset(3);
  CHECK(f3.kind == FigureKind::Analytic);
  const std::vector<AnalyticRow> rows = run_analytic(f3.config);
  CHECK(rows.size() == 5 * 60);
  std::map<int, std::pair<double, double>> best;  // L -> (throughput, lambda)
  for (const AnalyticRow& r : rows) {
    auto& b = best[r.L];
    if (r.throughput > b.first) b = {r.throughput, r.lambda};
  }
  for (int L = 2; L <= 5; ++L) {
    CHECK(best[L].second > best[L - 1].second);
    CHECK(best[L].first > best[L - 1].first);
  }
}

TEST_CASE("figure 2 ordering at reduced size") {
  ScenarioConfig c = figure_preset(2).config;
  c.n_trials = 4000;
  c.lambda_points = 4;
  const std::vector<SimulationRow> rows = run_simulation(c);
  CHECK(rows.size() == 16);
  for (size_t i = 0; i < rows.size(); i += 4) {
    const OutageEstimate& oc = rows[i].mc;
    REQUIRE(rows[i].receiver == Receiver::oc());
    for (size_t k = 1; k < 4; ++k) CHECK(oc.p_hat <= rows[i + k].mc.p_hat);
  }
}
