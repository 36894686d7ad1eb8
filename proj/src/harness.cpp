#include "ocfield/harness.hpp"

#include "ocfield/contention.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace ocfield {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double number_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config field '") + key + "' must be a number");
  return v.get<double>();
}

long long integer_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("config field '") + key + "' must be an integer");
  }
  return v.get<long long>();
}

// Smallest x >= 0 with P(Poisson(x) >= L) = p, by bisection.
double poisson_mean_for_tail(int L, double p) {
  double lo = 0.0;
  double hi = 1.0;
  while (poisson_upper_tail(L, hi) < p) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (poisson_upper_tail(L, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  if (points == 1) return {lo};
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (points - 1);
  for (int i = 0; i < points; ++i) g.push_back(std::exp(a + i * step));
  return g;
}

void append_row(std::string& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const std::string& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  out += '\n';
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ScenarioConfig::validate() const {
  try {
    SystemParams p = params;
    p.L = 1;
    p.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("invalid system parameters: ") + e.what());
  }
  if (antennas.empty()) throw ConfigError("antennas: at least one value required");
  for (const int L : antennas) {
    if (L < 1) throw ConfigError("antennas: every L must be >= 1");
  }
  if (receivers.empty()) throw ConfigError("receivers: at least one receiver required");
  for (const Receiver& r : receivers) {
    if (r.kind != Receiver::Kind::PZF) continue;
    for (const int L : antennas) {
      if (r.cancel < 0 || r.cancel > L - 1) {
        throw ConfigError("receivers: " + r.name() + " needs 0 <= k <= L-1 for L = " + std::to_string(L));
      }
    }
  }
  for (const double l : lambda_grid) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("lambda: grid values must be positive");
  }
  if (lambda_grid.empty()) {
    if (lambda_points < 1) throw ConfigError("lambda_points must be >= 1");
    if (!(outage_lo > 0.0 && outage_lo < outage_hi && outage_hi < 1.0)) {
      throw ConfigError("outage_lo/outage_hi must satisfy 0 < lo < hi < 1");
    }
  }
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (!(expected_count > 0.0)) throw ConfigError("expected_count must be > 0");
  if (workers < 0) throw ConfigError("threads must be >= 0");
}

ScenarioConfig parse_config(const std::string& json_text, ScenarioConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "alpha", "beta_db", "d_r", "sigma2_db", "sigma2", "antennas", "receivers", "lambda",
      "lambda_points", "outage_lo", "outage_hi", "n_trials", "seed", "expected_count",
      "threads", "output", "normalized"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }

  ScenarioConfig c = std::move(base);
  try {
    if (j.contains("alpha")) c.params.alpha = number_field(j, "alpha");
    if (j.contains("beta_db")) c.params.beta = db_to_linear(number_field(j, "beta_db"));
    if (j.contains("d_r")) c.params.d_r = number_field(j, "d_r");
    if (j.contains("sigma2_db") && j.contains("sigma2")) {
      throw ConfigError("give either sigma2_db or sigma2, not both");
    }
    if (j.contains("sigma2_db")) {
      const json& v = j["sigma2_db"];
      if (v.is_string() && v.get<std::string>() == "-inf") {
        c.params.sigma2 = 0.0;
      } else {
        c.params.sigma2 = db_to_linear(number_field(j, "sigma2_db"));
      }
    }
    if (j.contains("sigma2")) c.params.sigma2 = number_field(j, "sigma2");
    if (j.contains("antennas")) {
      c.antennas.clear();
      for (const json& v : j["antennas"]) {
        if (!v.is_number_integer()) throw ConfigError("antennas: entries must be integers");
        c.antennas.push_back(v.get<int>());
      }
    }
    if (j.contains("receivers")) {
      c.receivers.clear();
      for (const json& v : j["receivers"]) {
        if (!v.is_string()) throw ConfigError("receivers: entries must be strings");
        try {
          c.receivers.push_back(Receiver::parse(v.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("receivers: ") + e.what());
        }
      }
    }
    if (j.contains("lambda")) {
      c.lambda_grid.clear();
      for (const json& v : j["lambda"]) {
        if (!v.is_number()) throw ConfigError("lambda: entries must be numbers");
        c.lambda_grid.push_back(v.get<double>());
      }
    }
    if (j.contains("lambda_points")) c.lambda_points = static_cast<int>(integer_field(j, "lambda_points"));
    if (j.contains("outage_lo")) c.outage_lo = number_field(j, "outage_lo");
    if (j.contains("outage_hi")) c.outage_hi = number_field(j, "outage_hi");
    if (j.contains("n_trials")) c.n_trials = integer_field(j, "n_trials");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) {
        throw ConfigError("config field 'seed' must be a non-negative integer");
      }
      c.master_seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("expected_count")) c.expected_count = number_field(j, "expected_count");
    if (j.contains("threads")) c.workers = static_cast<int>(integer_field(j, "threads"));
    if (j.contains("output")) {
      if (!j["output"].is_string()) throw ConfigError("config field 'output' must be a string");
      c.output_path = j["output"].get<std::string>();
    }
    if (j.contains("normalized")) {
      if (!j["normalized"].is_boolean()) throw ConfigError("config field 'normalized' must be a boolean");
      c.normalized = j["normalized"].get<bool>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

std::optional<double> lambda_for_outage(SystemParams params, double p) {
  params.lambda = 0.0;
  params.validate();
  const double gamma = gamma_from_beta(params.beta, params.d_r, params.alpha);
  const double noise = params.sigma2 * gamma;
  const double x = poisson_mean_for_tail(params.L, p);
  if (x <= noise) return std::nullopt;
  return (x - noise) / (delta_const(params.alpha).value * std::pow(gamma, 2.0 / params.alpha));
}

std::vector<double> lambda_grid_for(const ScenarioConfig& config, int L) {
  if (!config.lambda_grid.empty()) return config.lambda_grid;
  SystemParams p = config.params;
  p.L = L;
  p.lambda = 0.0;
  // Targets are placed on the range [floor, 1] the density can reach.
  const double floor = outage_cdf(p);
  if (floor >= config.outage_hi) {
    throw ConfigError("noise alone already gives outage above outage_hi for L = " + std::to_string(L));
  }
  const auto lo = lambda_for_outage(p, floor + (1.0 - floor) * config.outage_lo);
  const auto hi = lambda_for_outage(p, floor + (1.0 - floor) * config.outage_hi);
  if (!lo || !hi) throw InvariantViolation("outage grid inversion failed");
  return log_grid(*lo, *hi, config.lambda_points);
}

std::vector<AnalyticRow> run_analytic(const ScenarioConfig& config) {
  config.validate();
  std::vector<AnalyticRow> rows;
  for (const int L : config.antennas) {
    SystemParams p = config.params;
    p.L = L;
    for (const double lambda : lambda_grid_for(config, L)) {
      p.lambda = lambda;
      const double f = outage_cdf(p);
      rows.push_back({lambda, L, f, throughput_density(p)});
    }
  }
  return rows;
}

std::vector<SimulationRow> run_simulation(const ScenarioConfig& config) {
  config.validate();
  RunOptions opt;
  opt.n_trials = config.n_trials;
  opt.master_seed = config.master_seed;
  opt.expected_count = config.expected_count;
  opt.workers = config.workers;

  std::vector<SimulationRow> rows;
  for (const int L : config.antennas) {
    SystemParams p = config.params;
    p.L = L;
    for (const double lambda : lambda_grid_for(config, L)) {
      p.lambda = lambda;
      const std::vector<OutageEstimate> mc = estimate_outage(p, config.receivers, opt);
      for (size_t r = 0; r < config.receivers.size(); ++r) {
        const Receiver& rx = config.receivers[r];
        const double analytic = rx.kind == Receiver::Kind::OC ? outage_cdf(p) : kNaN;
        rows.push_back({lambda, L, rx, analytic, mc[r]});
      }
    }
  }
  return rows;
}

std::vector<OptimizeRow> run_optimize(const ScenarioConfig& config) {
  config.validate();
  std::vector<OptimizeRow> rows;
  const SystemParams& base = config.params;
  const double gamma = gamma_from_beta(base.beta, base.d_r, base.alpha);

  for (const int L : config.antennas) {
    if (base.sigma2 == 0.0) {
      const ContentionOptimum o = config.normalized ? optimize_contention_at_scale(L, 1.0)
                                                    : optimize_contention(L, base.alpha, gamma);
      rows.push_back({L, o.g, o.lambda_max, o.t_max, true});
      continue;
    }
    if (config.normalized) throw ConfigError("normalized optimization requires sigma2 = 0");
    // Search around the noise-free optimum; noise only lowers the optimum density.
    const ContentionOptimum ref = optimize_contention(L, base.alpha, gamma);
    SystemParams p = base;
    p.L = L;
    const GridOptimum g = grid_optimize_density(p, ref.lambda_max * 1e-4, ref.lambda_max * 10.0, 2001);
    rows.push_back({L, kNaN, g.lambda, g.throughput, false});
  }
  return rows;
}

std::string to_csv(const std::vector<AnalyticRow>& rows) {
  std::string out = std::string(kAnalyticHeader) + "\n";
  for (const AnalyticRow& r : rows) {
    append_row(out, {format_double(r.lambda), std::to_string(r.L), format_double(r.outage),
                     format_double(r.throughput)});
  }
  return out;
}

std::string to_csv(const std::vector<SimulationRow>& rows) {
  std::string out = std::string(kSimulationHeader) + "\n";
  for (const SimulationRow& r : rows) {
    append_row(out, {format_double(r.lambda), std::to_string(r.L), r.receiver.name(),
                     format_double(r.analytic_outage), format_double(r.mc.p_hat),
                     format_double(r.mc.std_error), std::to_string(r.mc.n_trials),
                     std::to_string(r.mc.master_seed)});
  }
  return out;
}

std::string to_csv(const std::vector<OptimizeRow>& rows) {
  std::string out = std::string(kOptimizeHeader) + "\n";
  for (const OptimizeRow& r : rows) {
    append_row(out, {std::to_string(r.L), format_double(r.g), format_double(r.lambda_max),
                     format_double(r.t_max), r.closed_form ? "closed_form" : "grid_search"});
  }
  return out;
}

FigurePreset figure_preset(int number) {
  ScenarioConfig c;
  c.params.alpha = 3.5;
  c.params.beta = db_to_linear(3.0);
  c.params.d_r = 10.0;
  switch (number) {
    case 1:
      c.params.sigma2 = db_to_linear(-50.0);
      c.antennas = {1, 2, 3, 4};
      c.receivers = {Receiver::oc()};
      return {FigureKind::Simulation, c};
    case 2:
      c.params.sigma2 = 0.0;
      c.antennas = {3};
      // k = 1 is the only cancellation count strictly between MRC and ZF at L = 3.
      c.receivers = {Receiver::oc(), Receiver::mrc(), Receiver::zf(), Receiver::pzf(1)};
      return {FigureKind::Simulation, c};
    case 3: {
      c.params.sigma2 = db_to_linear(-57.0);
      c.antennas = {1, 2, 3, 4, 5};
      const double gamma = gamma_from_beta(c.params.beta, c.params.d_r, c.params.alpha);
      const double lo = lambda_max(1, c.params.alpha, gamma) / 20.0;
      const double hi = lambda_max(5, c.params.alpha, gamma) * 4.0;
      c.lambda_grid = log_grid(lo, hi, 60);
      return {FigureKind::Analytic, c};
    }
    case 4:
      c.params.sigma2 = 0.0;
      c.antennas = {1, 2, 3, 4, 5, 6, 7, 8};
      c.normalized = true;
      return {FigureKind::Optimize, c};
    default:
      throw ConfigError("figure must be 1, 2, 3 or 4");
  }
}

}  // namespace ocfield
