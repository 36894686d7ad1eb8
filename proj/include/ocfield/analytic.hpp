#pragma once

// Closed-form outage of optimum combining in a Poisson field of
// Rayleigh-faded interferers, its regime special cases and SIR moments.

#include <stdexcept>

namespace ocfield {

/// Raised when an internal mathematical guarantee does not hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One scenario. Transmit power is normalized to 1; `sigma2` is the scalar
/// in R = R_I + sigma2 * I (total complex noise variance per antenna).
struct SystemParams {
  double lambda = 0.0;  // interferers per m^2
  double alpha = 3.5;   // path-loss exponent, > 2
  double sigma2 = 0.0;  // linear
  double d_r = 1.0;     // desired link distance, m
  int L = 1;            // receive antennas
  double beta = 1.0;    // linear SINR threshold

  /// Throws std::domain_error naming the offending field.
  void validate() const;
};

/// Geometry constant of the plane integral: pi (2/alpha) G(2/alpha) G(1 - 2/alpha).
struct DeltaConst {
  double value;
};

double gamma_from_beta(double beta, double d_r, double alpha);

DeltaConst delta_const(double alpha);

/// 1 - sum_{i<L} x^i/i! e^{-x}, i.e. P(Poisson(x) >= L), for x >= 0.
/// The i = 0 term is 1 even at x = 0.
double poisson_upper_tail(int L, double x);

/// lambda * Delta * gamma^(2/alpha) + sigma2 * gamma.
double outage_exponent(const SystemParams& params);

double outage_cdf(const SystemParams& params);
double outage_noise_limited(int L, double sigma2, double gamma);
double outage_interference_limited(int L, double lambda, double alpha, double gamma);

double sir_mean(int L, double alpha, double lambda, double d_r);
double sir_variance(int L, double alpha, double lambda, double d_r);
double array_gain(int L, double alpha);

/// lambda * (1 - outage_cdf(params)).
double throughput_density(const SystemParams& params);

/// Part of the outage exponent contributed by interferers farther than
/// `disk_radius`: lambda * int_{|X| > d} gamma|X|^-alpha / (1 + gamma|X|^-alpha) dX.
/// Subtracting it from outage_exponent gives the exact outage of a field
/// truncated to the disk.
double truncation_deficit(double lambda, double alpha, double gamma, double disk_radius);

/// Exact outage when interferers only exist inside the disk of `disk_radius`.
double outage_cdf_finite_disk(const SystemParams& params, double disk_radius);

}  // namespace ocfield
