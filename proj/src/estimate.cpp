#include "ocfield/estimate.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace ocfield {

namespace {

void check_trials(long long n) {
  if (n < 1) throw std::domain_error("n_trials must be >= 1");
}

int resolve_workers(const RunOptions& options) {
  return options.workers > 0 ? options.workers : default_worker_count();
}

struct Snapshot {
  NetworkRealization net;
  ChannelDraw ch;
};

Snapshot draw_snapshot(const SystemParams& params, double expected_count, Stream& rng) {
  Snapshot s;
  s.net = sample_ppp(params.lambda, expected_count, rng);
  s.ch = draw_channels(params.L, s.net.node_count(), rng);
  return s;
}

double moment_sample(const SystemParams& params, const Receiver& receiver,
                     const RunOptions& options, long long trial) {
  const Receiver rx[] = {receiver};
  return trial_sinrs(params, rx, options.expected_count, options.master_seed, trial)[0];
}

MomentEstimate summarize(const std::vector<double>& samples) {
  MomentEstimate m;
  double sum = 0.0;
  for (const double v : samples) {
    if (std::isinf(v)) {
      ++m.n_infinite;
    } else {
      ++m.n_finite;
      sum += v;
    }
  }
  if (m.n_finite == 0) return m;
  m.mean = sum / static_cast<double>(m.n_finite);
  double ss = 0.0;
  for (const double v : samples) {
    if (!std::isinf(v)) ss += (v - m.mean) * (v - m.mean);
  }
  m.variance = m.n_finite > 1 ? ss / static_cast<double>(m.n_finite - 1) : 0.0;
  return m;
}

void check_moment_params(const SystemParams& params, const RunOptions& options) {
  check_trials(options.n_trials);
  params.validate();
  if (params.sigma2 != 0.0) throw std::domain_error("SIR moments require sigma2 = 0");
}

}  // namespace

OutageEstimate make_estimate(long long outages, long long n_trials, std::uint64_t master_seed) {
  check_trials(n_trials);
  OutageEstimate e;
  e.n_trials = n_trials;
  e.master_seed = master_seed;
  e.p_hat = static_cast<double>(outages) / static_cast<double>(n_trials);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n_trials));
  return e;
}

int default_worker_count() {
  if (const char* env = std::getenv("OC_FIELD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

std::vector<double> trial_sinrs(const SystemParams& params, std::span<const Receiver> receivers,
                                double expected_count, std::uint64_t master_seed,
                                long long trial_index) {
  Stream rng(master_seed, static_cast<std::uint64_t>(trial_index));
  const Snapshot s = draw_snapshot(params, expected_count, rng);
  std::vector<double> out;
  out.reserve(receivers.size());
  for (const Receiver& rx : receivers) out.push_back(receiver_sinr(rx, s.net, s.ch, params));
  return out;
}

std::vector<OutageEstimate> estimate_outage(const SystemParams& params,
                                            std::span<const Receiver> receivers,
                                            const RunOptions& options) {
  check_trials(options.n_trials);
  params.validate();
  const size_t nr = receivers.size();
  std::vector<long long> outages(nr, 0);

#pragma omp parallel num_threads(resolve_workers(options))
  {
    std::vector<long long> local(nr, 0);
#pragma omp for schedule(static)
    for (long long t = 0; t < options.n_trials; ++t) {
      const std::vector<double> sinr =
          trial_sinrs(params, receivers, options.expected_count, options.master_seed, t);
      for (size_t r = 0; r < nr; ++r) local[r] += sinr[r] < params.beta ? 1 : 0;
    }
#pragma omp critical
    for (size_t r = 0; r < nr; ++r) outages[r] += local[r];
  }

  std::vector<OutageEstimate> out;
  out.reserve(nr);
  for (size_t r = 0; r < nr; ++r) {
    out.push_back(make_estimate(outages[r], options.n_trials, options.master_seed));
  }
  return out;
}

OutageEstimate estimate_outage(const SystemParams& params, const Receiver& receiver,
                               const RunOptions& options) {
  const Receiver rx[] = {receiver};
  return estimate_outage(params, rx, options)[0];
}

std::vector<OutageEstimate> estimate_outage_serial(const SystemParams& params,
                                                   std::span<const Receiver> receivers,
                                                   const RunOptions& options) {
  check_trials(options.n_trials);
  params.validate();
  std::vector<long long> outages(receivers.size(), 0);
  for (long long t = 0; t < options.n_trials; ++t) {
    const std::vector<double> sinr =
        trial_sinrs(params, receivers, options.expected_count, options.master_seed, t);
    for (size_t r = 0; r < receivers.size(); ++r) outages[r] += sinr[r] < params.beta ? 1 : 0;
  }
  std::vector<OutageEstimate> out;
  for (const long long k : outages) {
    out.push_back(make_estimate(k, options.n_trials, options.master_seed));
  }
  return out;
}

MomentEstimate estimate_sir_moments(const SystemParams& params, const Receiver& receiver,
                                    const RunOptions& options) {
  check_moment_params(params, options);
  std::vector<double> samples(static_cast<size_t>(options.n_trials));
#pragma omp parallel for schedule(static) num_threads(resolve_workers(options))
  for (long long t = 0; t < options.n_trials; ++t) {
    samples[static_cast<size_t>(t)] = moment_sample(params, receiver, options, t);
  }
  return summarize(samples);
}

MomentEstimate estimate_sir_moments_serial(const SystemParams& params, const Receiver& receiver,
                                           const RunOptions& options) {
  check_moment_params(params, options);
  std::vector<double> samples;
  samples.reserve(static_cast<size_t>(options.n_trials));
  for (long long t = 0; t < options.n_trials; ++t) {
    samples.push_back(moment_sample(params, receiver, options, t));
  }
  return summarize(samples);
}

OutageEstimate estimate_conditional_outage(const NetworkRealization& net,
                                           const SystemParams& params, const RunOptions& options) {
  check_trials(options.n_trials);
  params.validate();
  long long outages = 0;
#pragma omp parallel for schedule(static) reduction(+ : outages) num_threads(resolve_workers(options))
  for (long long t = 0; t < options.n_trials; ++t) {
    Stream rng(options.master_seed, static_cast<std::uint64_t>(t));
    const ChannelDraw ch = draw_channels(params.L, net.node_count(), rng);
    outages += oc_sinr(net, ch, params) < params.beta ? 1 : 0;
  }
  return make_estimate(outages, options.n_trials, options.master_seed);
}

OutageEstimate estimate_lth_nearest_within(double lambda, int L, double radius,
                                           const RunOptions& options) {
  check_trials(options.n_trials);
  if (L < 1) throw std::domain_error("L must be >= 1");
  const double r2 = radius * radius;
  long long hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(resolve_workers(options))
  for (long long t = 0; t < options.n_trials; ++t) {
    Stream rng(options.master_seed, static_cast<std::uint64_t>(t));
    const NetworkRealization net = sample_ppp(lambda, options.expected_count, rng);
    int inside = 0;
    for (const Point& p : net.positions) inside += p.dist_sq() < r2 ? 1 : 0;
    hits += inside >= L ? 1 : 0;
  }
  return make_estimate(hits, options.n_trials, options.master_seed);
}

DominanceReport check_oc_dominance(const SystemParams& params, std::span<const Receiver> others,
                                   int random_weights, double rel_tol, const RunOptions& options) {
  check_trials(options.n_trials);
  params.validate();
  DominanceReport report;
  report.trials = options.n_trials;
  long long comparisons = 0;
  long long violations = 0;
  double worst = 0.0;

#pragma omp parallel for schedule(static) num_threads(resolve_workers(options)) \
    reduction(+ : comparisons, violations) reduction(max : worst)
  for (long long t = 0; t < options.n_trials; ++t) {
    Stream rng(options.master_seed, static_cast<std::uint64_t>(t));
    const Snapshot s = draw_snapshot(params, options.expected_count, rng);
    const double oc = oc_sinr(s.net, s.ch, params);

    auto compare = [&](double other) {
      ++comparisons;
      if (std::isinf(oc)) return;
      if (std::isinf(other) || other > oc * (1.0 + rel_tol)) ++violations;
      if (oc > 0.0) worst = std::max(worst, other / oc);
    };
    for (const Receiver& rx : others) compare(receiver_sinr(rx, s.net, s.ch, params));
    for (int k = 0; k < random_weights; ++k) {
      ComplexVector w(params.L);
      for (Complex& z : w) z = rng.complex_normal();
      compare(combiner_sinr(w, s.net, s.ch, params));
    }
  }
  report.comparisons = comparisons;
  report.violations = violations;
  report.worst_ratio = worst;
  return report;
}

}  // namespace ocfield
