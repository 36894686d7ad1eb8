#pragma once

// Optimum ALOHA contention density for optimum combining in the
// interference-limited regime.

#include "ocfield/analytic.hpp"

#include <vector>

namespace ocfield {

struct ContentionOptimum {
  int L;
  double g;           // positive root of q_poly(L, .)
  double lambda_max;  // nodes per m^2
  double t_max;       // successful transmissions per m^2
};

/// Q(t) = sum_{i<L} t^i/i! - t^L/(L-1)!.
double q_poly(int L, double t);

/// e^{-t} Q(t). Same sign and root as Q, but O(1) in magnitude for any L;
/// this is the quantity the root finder drives to zero.
double q_poly_scaled(int L, double t);

/// Unique positive root of Q, bracketed in [L/2, L]. Throws
/// InvariantViolation if the bracket does not hold.
double g_of_l(int L);

double lambda_max(int L, double alpha, double gamma);
double throughput_max(int L, double alpha, double gamma);

ContentionOptimum optimize_contention(int L, double alpha, double gamma);

/// Same, with the interference scale Delta * gamma^(2/alpha) given directly
/// (1 for the normalized curves).
ContentionOptimum optimize_contention_at_scale(int L, double scale);

/// Grid search for the density maximizing lambda (1 - F) when noise is
/// present. Not a closed form: the grid is log-spaced over [lo, hi].
struct GridOptimum {
  double lambda;
  double throughput;
};
GridOptimum grid_optimize_density(SystemParams params, double lambda_lo, double lambda_hi,
                                  int points);

}  // namespace ocfield
