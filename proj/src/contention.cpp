#include "ocfield/contention.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ocfield {

namespace {

struct ScaledQ {
  double value;       // e^{-t} Q(t)
  double derivative;  // d/dt of the above
};

// With p_i = t^i e^{-t} / i!:
//   e^{-t} Q(t)  = sum_{i<L} p_i - L p_L
//   e^{-t} Q'(t) = sum_{i<L-1} p_i - L p_{L-1}
ScaledQ scaled_q(int L, double t) {
  double p = std::exp(-t);
  double head = 0.0;
  double head_minus_last = 0.0;
  double p_last = 0.0;
  for (int i = 0; i < L; ++i) {
    if (i == L - 1) {
      head_minus_last = head;
      p_last = p;
    }
    head += p;
    p *= t / (i + 1);
  }
  const double value = head - L * p;
  const double dq = head_minus_last - L * p_last;
  return {value, dq - value};
}

double interference_scale(double alpha, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
  return delta_const(alpha).value * std::pow(gamma, 2.0 / alpha);
}

}  // namespace

double q_poly(int L, double t) {
  if (L < 1) throw std::domain_error("L must be >= 1");
  if (t < 0.0) throw std::domain_error("t must be >= 0");
  double term = 1.0;
  double head = 0.0;
  for (int i = 0; i < L; ++i) {
    head += term;
    term *= t / (i + 1);
  }
  return head - L * term;
}

double q_poly_scaled(int L, double t) {
  if (L < 1) throw std::domain_error("L must be >= 1");
  if (t < 0.0) throw std::domain_error("t must be >= 0");
  return scaled_q(L, t).value;
}

double g_of_l(int L) {
  if (L < 1) throw std::domain_error("L must be >= 1");
  double lo = 0.5 * L;
  double hi = static_cast<double>(L);
  const double f_lo = scaled_q(L, lo).value;
  const double f_hi = scaled_q(L, hi).value;
  if (!(f_lo > 0.0) || !(f_hi <= 0.0)) {
    throw InvariantViolation("Q root not bracketed by [L/2, L] for L = " + std::to_string(L));
  }
  if (f_hi == 0.0) return hi;

  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double f = scaled_q(L, mid).value;
    if (f == 0.0) return mid;
    if (f > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double root = 0.5 * (lo + hi);
  const ScaledQ at = scaled_q(L, root);
  if (at.derivative != 0.0) {
    const double polished = root - at.value / at.derivative;
    if (polished >= 0.5 * L && polished <= L &&
        std::abs(scaled_q(L, polished).value) <= std::abs(at.value)) {
      root = polished;
    }
  }
  return root;
}

double lambda_max(int L, double alpha, double gamma) {
  return g_of_l(L) / interference_scale(alpha, gamma);
}

double throughput_max(int L, double alpha, double gamma) {
  const double g = g_of_l(L);
  const double log_num = (L + 1) * std::log(g) - g - boost::math::lgamma(static_cast<double>(L));
  return std::exp(log_num) / interference_scale(alpha, gamma);
}

ContentionOptimum optimize_contention(int L, double alpha, double gamma) {
  return optimize_contention_at_scale(L, interference_scale(alpha, gamma));
}

ContentionOptimum optimize_contention_at_scale(int L, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::domain_error("scale must be > 0");
  const double g = g_of_l(L);
  const double t = std::exp((L + 1) * std::log(g) - g - boost::math::lgamma(static_cast<double>(L)));
  return ContentionOptimum{L, g, g / scale, t / scale};
}

GridOptimum grid_optimize_density(SystemParams params, double lambda_lo, double lambda_hi,
                                  int points) {
  if (!(lambda_lo > 0.0) || !(lambda_hi > lambda_lo)) {
    throw std::domain_error("grid optimizer needs 0 < lambda_lo < lambda_hi");
  }
  if (points < 3) throw std::domain_error("grid optimizer needs at least 3 points");

  auto throughput_at = [&params](double lambda) {
    params.lambda = lambda;
    return throughput_density(params);
  };

  const double log_lo = std::log(lambda_lo);
  const double step = (std::log(lambda_hi) - log_lo) / (points - 1);
  int best = 0;
  double best_t = -1.0;
  for (int i = 0; i < points; ++i) {
    const double t = throughput_at(std::exp(log_lo + i * step));
    if (t > best_t) {
      best_t = t;
      best = i;
    }
  }

  // Golden-section refinement between the neighbours of the best grid point.
  double a = log_lo + std::max(best - 1, 0) * step;
  double b = log_lo + std::min(best + 1, points - 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = throughput_at(std::exp(c));
  double fd = throughput_at(std::exp(d));
  for (int it = 0; it < 100 && (b - a) > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = throughput_at(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = throughput_at(std::exp(d));
    }
  }
  const double refined = std::exp(0.5 * (a + b));
  const double refined_t = throughput_at(refined);
  if (refined_t >= best_t) return {refined, refined_t};
  return {std::exp(log_lo + best * step), best_t};
}

}  // namespace ocfield
