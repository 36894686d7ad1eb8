#pragma once

// Scenario configuration and the table-producing runs behind the CLI.

#include "ocfield/analytic.hpp"
#include "ocfield/estimate.hpp"
#include "ocfield/field.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocfield {

/// Invalid user configuration. The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double db_to_linear(double db);
double linear_to_db(double linear);

struct ScenarioConfig {
  // lambda is unused here; densities come from the grid.
  SystemParams params{0.0, 3.5, 1e-5, 10.0, 1, db_to_linear(3.0)};
  std::vector<int> antennas{1};
  std::vector<Receiver> receivers{Receiver::oc()};

  // An explicit grid is shared by every L. Otherwise each L gets its own
  // log grid of `lambda_points` densities whose closed-form outage spans
  // floor + (1 - floor) [outage_lo, outage_hi], floor being the noise-only
  // outage.
  std::vector<double> lambda_grid;
  int lambda_points = 10;
  double outage_lo = 0.01;
  double outage_hi = 0.99;

  long long n_trials = 100000;
  std::uint64_t master_seed = 1;
  double expected_count = kDefaultExpectedCount;
  int workers = 0;
  std::string output_path;  // empty: stdout

  /// optimize: use Delta gamma^(2/alpha) = 1.
  bool normalized = false;

  /// Throws ConfigError.
  void validate() const;
};

/// Reads a flat JSON object on top of `base`. Recognized keys:
/// alpha, beta_db, d_r, sigma2_db (number or "-inf"), sigma2 (linear),
/// antennas, receivers, lambda, lambda_points, outage_lo, outage_hi,
/// n_trials, seed, expected_count, threads, output, normalized.
ScenarioConfig parse_config(const std::string& json_text, ScenarioConfig base = {});

/// Densities used for antenna count L.
std::vector<double> lambda_grid_for(const ScenarioConfig& config, int L);

/// Density at which the closed-form outage equals p (nullopt if p is at or
/// below the noise-only outage).
std::optional<double> lambda_for_outage(SystemParams params, double p);

struct AnalyticRow {
  double lambda;
  int L;
  double outage;
  double throughput;
};

struct SimulationRow {
  double lambda;
  int L;
  Receiver receiver;
  double analytic_outage;  // closed form for OC, NaN otherwise
  OutageEstimate mc;
};

struct OptimizeRow {
  int L;
  double g;  // NaN in grid-search mode
  double lambda_max;
  double t_max;
  bool closed_form;
};

std::vector<AnalyticRow> run_analytic(const ScenarioConfig& config);
std::vector<SimulationRow> run_simulation(const ScenarioConfig& config);
/// Closed form when sigma2 = 0, labeled grid search otherwise.
std::vector<OptimizeRow> run_optimize(const ScenarioConfig& config);

std::string to_csv(const std::vector<AnalyticRow>& rows);
std::string to_csv(const std::vector<SimulationRow>& rows);
std::string to_csv(const std::vector<OptimizeRow>& rows);

inline constexpr const char* kSimulationHeader =
    "lambda,L,receiver,analytic_outage,mc_outage,stderr,n_trials,seed";
inline constexpr const char* kAnalyticHeader = "lambda,L,outage,throughput";
inline constexpr const char* kOptimizeHeader = "L,g,lambda_max,t_max,method";

/// 17 significant digits.
std::string format_double(double v);

enum class FigureKind { Simulation, Analytic, Optimize };

struct FigurePreset {
  FigureKind kind;
  ScenarioConfig config;
};

/// Parameter sets of figures 1-4. Throws ConfigError for other numbers.
FigurePreset figure_preset(int number);

}  // namespace ocfield
