#pragma once

// Monte Carlo estimators over independent snapshots.
//
// Trial i draws everything from Stream(master_seed, i) and nothing else.
// The OpenMP kernels reduce by integer counting or by ordered summation of
// stored per-trial values, so their results are bit-identical to the serial
// reference for any worker count.

#include "ocfield/field.hpp"

#include <cstdint>
#include <vector>

namespace ocfield {

inline constexpr double kDefaultExpectedCount = 100.0;

struct OutageEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/n)
  long long n_trials = 0;
  std::uint64_t master_seed = 0;

  bool operator==(const OutageEstimate&) const = default;
};

OutageEstimate make_estimate(long long outages, long long n_trials, std::uint64_t master_seed);

/// Worker count: OC_FIELD_THREADS if set to a positive integer, otherwise
/// the OpenMP default.
int default_worker_count();

struct RunOptions {
  long long n_trials = 100000;
  std::uint64_t master_seed = 1;
  double expected_count = kDefaultExpectedCount;
  int workers = 0;  // 0: default_worker_count()
};

/// SINR of each receiver in one snapshot (trial `trial_index`).
std::vector<double> trial_sinrs(const SystemParams& params, std::span<const Receiver> receivers,
                                double expected_count, std::uint64_t master_seed,
                                long long trial_index);

/// One estimate per receiver, all receivers evaluated on the same snapshots.
std::vector<OutageEstimate> estimate_outage(const SystemParams& params,
                                            std::span<const Receiver> receivers,
                                            const RunOptions& options);
OutageEstimate estimate_outage(const SystemParams& params, const Receiver& receiver,
                               const RunOptions& options);

/// Single-threaded reference for estimate_outage.
std::vector<OutageEstimate> estimate_outage_serial(const SystemParams& params,
                                                   std::span<const Receiver> receivers,
                                                   const RunOptions& options);

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;
  long long n_finite = 0;
  long long n_infinite = 0;  // excluded from the moments
};

/// Sample mean and variance of the SIR (sigma2 must be 0).
MomentEstimate estimate_sir_moments(const SystemParams& params, const Receiver& receiver,
                                    const RunOptions& options);
MomentEstimate estimate_sir_moments_serial(const SystemParams& params, const Receiver& receiver,
                                           const RunOptions& options);

/// Outage of optimum combining for a fixed set of interferer positions,
/// averaging over fading only.
OutageEstimate estimate_conditional_outage(const NetworkRealization& net,
                                           const SystemParams& params, const RunOptions& options);

/// Fraction of snapshots whose L-th nearest interferer lies within `radius`.
OutageEstimate estimate_lth_nearest_within(double lambda, int L, double radius,
                                           const RunOptions& options);

struct DominanceReport {
  long long trials = 0;
  long long comparisons = 0;
  long long violations = 0;
  double worst_ratio = 0.0;  // max over comparisons of other / oc
};

/// Per-snapshot check that OC is at least every other receiver's SINR
/// (and `random_weights` random combiners), up to `rel_tol`.
DominanceReport check_oc_dominance(const SystemParams& params, std::span<const Receiver> others,
                                   int random_weights, double rel_tol, const RunOptions& options);

}  // namespace ocfield
