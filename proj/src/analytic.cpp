#include "ocfield/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ocfield {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

void require_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 2.0, "alpha must be > 2");
}

// Interior of the moment formulas: Gamma(L + s) / (L - 1)!.
double gamma_ratio(int L, double s) {
  return boost::math::tgamma_ratio(static_cast<double>(L) + s, static_cast<double>(L));
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be >= 0");
  require_alpha(alpha);
  require(std::isfinite(sigma2) && sigma2 >= 0.0, "sigma2 must be >= 0");
  require(std::isfinite(d_r) && d_r > 0.0, "d_r must be > 0");
  require(L >= 1, "L must be >= 1");
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
}

double gamma_from_beta(double beta, double d_r, double alpha) {
  require(beta > 0.0, "beta must be > 0");
  require(d_r > 0.0, "d_r must be > 0");
  require_alpha(alpha);
  return beta * std::pow(d_r, alpha);
}

DeltaConst delta_const(double alpha) {
  require_alpha(alpha);
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z) with z = 2 / alpha.
  const double s = std::sin(2.0 * kPi / alpha);
  require(s > 0.0, "alpha too close to 2: Delta diverges");
  return DeltaConst{2.0 * kPi * kPi / (alpha * s)};
}

double poisson_upper_tail(int L, double x) {
  require(L >= 1, "L must be >= 1");
  require(x >= 0.0 && !std::isnan(x), "Poisson mean must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;

  if (x < static_cast<double>(L)) {
    // Terms decrease from i = L on; sum the tail directly to keep relative
    // accuracy when the outage is small.
    double term = std::exp(L * std::log(x) - x - boost::math::lgamma(L + 1.0));
    double sum = 0.0;
    for (int i = L; term > 0.0; ++i) {
      sum += term;
      if (term < sum * 1e-17) break;
      term *= x / (i + 1);
    }
    return std::min(sum, 1.0);
  }

  // term_{i+1} = term_i * x / (i + 1), starting from e^{-x}.
  double term = std::exp(-x);
  if (term == 0.0) {
    // e^{-x} underflowed; the largest head term is i = L - 1.
    const double log_last = (L - 1) * std::log(x) - x - boost::math::lgamma(static_cast<double>(L));
    if (log_last < -745.0) return 1.0;
    double head = 0.0;
    for (int i = 0; i < L; ++i) head += std::exp(i * std::log(x) - x - boost::math::lgamma(i + 1.0));
    return 1.0 - head;
  }
  double head = 0.0;
  for (int i = 0; i < L; ++i) {
    head += term;
    term *= x / (i + 1);
  }
  return std::max(0.0, 1.0 - head);
}

double outage_exponent(const SystemParams& params) {
  params.validate();
  const double gamma = gamma_from_beta(params.beta, params.d_r, params.alpha);
  const double delta = delta_const(params.alpha).value;
  return params.lambda * delta * std::pow(gamma, 2.0 / params.alpha) + params.sigma2 * gamma;
}

double outage_cdf(const SystemParams& params) {
  return poisson_upper_tail(params.L, outage_exponent(params));
}

double outage_noise_limited(int L, double sigma2, double gamma) {
  require(sigma2 >= 0.0, "sigma2 must be >= 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  return poisson_upper_tail(L, sigma2 * gamma);
}

double outage_interference_limited(int L, double lambda, double alpha, double gamma) {
  require(lambda >= 0.0, "lambda must be >= 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  const double delta = delta_const(alpha).value;
  return poisson_upper_tail(L, lambda * delta * std::pow(gamma, 2.0 / alpha));
}

double array_gain(int L, double alpha) {
  require(L >= 1, "L must be >= 1");
  require_alpha(alpha);
  return gamma_ratio(L, alpha / 2.0);
}

double sir_mean(int L, double alpha, double lambda, double d_r) {
  require(lambda > 0.0, "SIR mean diverges at lambda = 0");
  require(d_r > 0.0, "d_r must be > 0");
  const double ld = lambda * delta_const(alpha).value;
  return array_gain(L, alpha) * std::pow(d_r, -alpha) / std::pow(ld, alpha / 2.0);
}

double sir_variance(int L, double alpha, double lambda, double d_r) {
  require(lambda > 0.0, "SIR variance diverges at lambda = 0");
  require(d_r > 0.0, "d_r must be > 0");
  const double ld = lambda * delta_const(alpha).value;
  const double g1 = array_gain(L, alpha);
  const double g2 = gamma_ratio(L, alpha);
  return (g2 - g1 * g1) * std::pow(d_r, -2.0 * alpha) / std::pow(ld, alpha);
}

double throughput_density(const SystemParams& params) {
  return params.lambda * (1.0 - outage_cdf(params));
}

double truncation_deficit(double lambda, double alpha, double gamma, double disk_radius) {
  require(lambda >= 0.0, "lambda must be >= 0");
  require_alpha(alpha);
  require(gamma >= 0.0, "gamma must be >= 0");
  require(disk_radius > 0.0, "disk radius must be > 0");
  if (lambda == 0.0 || gamma == 0.0) return 0.0;
  if (std::isinf(disk_radius)) return 0.0;

  // With u = r^2 the integral is lambda * pi * int_{u0}^inf gamma / (u^a + gamma) du,
  // a = alpha / 2. Beyond the point where gamma u^-a <= 1/2 the integrand expands
  // in an alternating series that integrates term by term.
  const double a = alpha / 2.0;
  const double u0 = disk_radius * disk_radius;
  const double u_split = std::max(u0, std::pow(2.0 * gamma, 1.0 / a));

  const double q = gamma * std::pow(u_split, -a);
  double series = 0.0;
  double qn = q;
  for (int n = 0; n < 200; ++n) {
    const double t = qn / (a * (n + 1) - 1.0);
    series += (n % 2 == 0) ? t : -t;
    if (t < 1e-18 * std::abs(series)) break;
    qn *= q;
  }
  double total = u_split * series;

  if (u_split > u0) {
    // Smooth bounded integrand on a finite interval; integrate in log u.
    auto f = [&](double s) {
      const double u = std::exp(s);
      return u * gamma / (std::pow(u, a) + gamma);
    };
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, std::log(u0), std::log(u_split), 15, 1e-14);
  }
  return lambda * kPi * total;
}

double outage_cdf_finite_disk(const SystemParams& params, double disk_radius) {
  const double gamma = gamma_from_beta(params.beta, params.d_r, params.alpha);
  const double x = outage_exponent(params) -
                   truncation_deficit(params.lambda, params.alpha, gamma, disk_radius);
  return poisson_upper_tail(params.L, std::max(x, 0.0));
}

}  // namespace ocfield
