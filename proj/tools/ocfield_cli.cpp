// ocfield: closed-form and Monte Carlo outage of optimum combining in a
// Poisson field of interferers.
//
//   ocfield analytic  [options]
//   ocfield simulate  [options]
//   ocfield optimize  [options]
//   ocfield figure N  [options]     N in 1..4
//
// Exit codes: 0 success, 2 configuration error, 3 internal invariant violation.

#include "ocfield/analytic.hpp"
#include "ocfield/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

struct Overrides {
  std::string config_path;
  std::optional<double> alpha, beta_db, d_r, sigma2_db, sigma2, expected_count, outage_lo, outage_hi;
  std::vector<int> antennas;
  std::vector<std::string> receivers;
  std::vector<double> lambda;
  std::optional<int> lambda_points, threads;
  std::optional<long long> n_trials;
  std::optional<std::uint64_t> seed;
  std::string output;
  bool normalized = false;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_path, "JSON config file (flags override its values)");
  cmd->add_option("--alpha", o.alpha, "path-loss exponent (> 2)");
  cmd->add_option("--beta-db", o.beta_db, "SINR threshold in dB");
  cmd->add_option("--d-r", o.d_r, "desired link distance in m");
  cmd->add_option("--sigma2-db", o.sigma2_db, "noise level in dB relative to unit transmit power");
  cmd->add_option("--sigma2", o.sigma2, "noise level, linear (0 for interference-limited)");
  cmd->add_option("-L,--antennas", o.antennas, "antenna counts")->delimiter(',');
  cmd->add_option("--lambda", o.lambda, "explicit density grid (nodes per m^2)")->delimiter(',');
  cmd->add_option("--lambda-points", o.lambda_points, "points of the automatic density grid");
  cmd->add_option("--outage-lo", o.outage_lo, "low end of the automatic grid, as an outage");
  cmd->add_option("--outage-hi", o.outage_hi, "high end of the automatic grid, as an outage");
  cmd->add_option("-o,--output", o.output, "CSV output path (default stdout)");
}

void add_mc_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-r,--receivers", o.receivers, "receivers: OC, MRC, ZF, PZF(k)")->delimiter(',');
  cmd->add_option("-n,--trials", o.n_trials, "Monte Carlo trials per grid point");
  cmd->add_option("-s,--seed", o.seed, "master seed");
  cmd->add_option("--expected-count", o.expected_count, "mean interferer count in the simulated disk");
  cmd->add_option("-t,--threads", o.threads, "worker threads (overrides OC_FIELD_THREADS)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ocfield::ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json overrides_json(const Overrides& o) {
  json j = json::object();
  if (o.alpha) j["alpha"] = *o.alpha;
  if (o.beta_db) j["beta_db"] = *o.beta_db;
  if (o.d_r) j["d_r"] = *o.d_r;
  if (o.sigma2_db) j["sigma2_db"] = *o.sigma2_db;
  if (o.sigma2) j["sigma2"] = *o.sigma2;
  if (!o.antennas.empty()) j["antennas"] = o.antennas;
  if (!o.receivers.empty()) j["receivers"] = o.receivers;
  if (!o.lambda.empty()) j["lambda"] = o.lambda;
  if (o.lambda_points) j["lambda_points"] = *o.lambda_points;
  if (o.outage_lo) j["outage_lo"] = *o.outage_lo;
  if (o.outage_hi) j["outage_hi"] = *o.outage_hi;
  if (o.n_trials) j["n_trials"] = *o.n_trials;
  if (o.seed) j["seed"] = *o.seed;
  if (o.expected_count) j["expected_count"] = *o.expected_count;
  if (o.threads) j["threads"] = *o.threads;
  if (!o.output.empty()) j["output"] = o.output;
  if (o.normalized) j["normalized"] = true;
  return j;
}

ocfield::ScenarioConfig resolve_config(const Overrides& o, ocfield::ScenarioConfig base) {
  json merged = json::object();
  if (!o.config_path.empty()) {
    try {
      merged = json::parse(read_file(o.config_path));
    } catch (const json::parse_error& e) {
      throw ocfield::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!merged.is_object()) throw ocfield::ConfigError("config must be a JSON object");
  }
  const json flags = overrides_json(o);
  // A noise flag replaces whichever noise key the file used.
  if (flags.contains("sigma2_db") || flags.contains("sigma2")) {
    merged.erase("sigma2_db");
    merged.erase("sigma2");
  }
  merged.update(flags);
  return ocfield::parse_config(merged.dump(), std::move(base));
}

void emit(const std::string& csv, const std::string& path) {
  if (path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ocfield::ConfigError("cannot write output file '" + path + "'");
  out << csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage of optimum combining in a Poisson field of Rayleigh-faded interferers"};
  app.require_subcommand(1);

  Overrides o;
  auto* analytic = app.add_subcommand("analytic", "closed-form outage and throughput per (lambda, L)");
  add_common_options(analytic, o);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage next to the closed form");
  add_common_options(simulate, o);
  add_mc_options(simulate, o);

  auto* optimize = app.add_subcommand("optimize", "optimum contention density and peak throughput");
  add_common_options(optimize, o);
  optimize->add_flag("--normalized", o.normalized, "set Delta*gamma^(2/alpha) = 1");

  int figure_number = 0;
  auto* figure = app.add_subcommand("figure", "reproduce the parameter set of figure 1-4 as CSV");
  figure->add_option("number", figure_number, "figure number")->required()->check(CLI::Range(1, 4));
  add_common_options(figure, o);
  add_mc_options(figure, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*analytic) {
      const auto cfg = resolve_config(o, {});
      emit(ocfield::to_csv(ocfield::run_analytic(cfg)), cfg.output_path);
    } else if (*simulate) {
      const auto cfg = resolve_config(o, {});
      emit(ocfield::to_csv(ocfield::run_simulation(cfg)), cfg.output_path);
    } else if (*optimize) {
      ocfield::ScenarioConfig base;
      base.params.sigma2 = 0.0;
      const auto cfg = resolve_config(o, base);
      if (cfg.params.sigma2 > 0.0) {
        std::cerr << "note: sigma2 > 0, using numerical grid search (no closed form)\n";
      }
      emit(ocfield::to_csv(ocfield::run_optimize(cfg)), cfg.output_path);
    } else if (*figure) {
      const ocfield::FigurePreset preset = ocfield::figure_preset(figure_number);
      const auto cfg = resolve_config(o, preset.config);
      switch (preset.kind) {
        case ocfield::FigureKind::Simulation:
          emit(ocfield::to_csv(ocfield::run_simulation(cfg)), cfg.output_path);
          break;
        case ocfield::FigureKind::Analytic:
          emit(ocfield::to_csv(ocfield::run_analytic(cfg)), cfg.output_path);
          break;
        case ocfield::FigureKind::Optimize:
          emit(ocfield::to_csv(ocfield::run_optimize(cfg)), cfg.output_path);
          break;
      }
    }
  } catch (const ocfield::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ocfield::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
