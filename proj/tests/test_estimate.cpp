#include <doctest.h>

#include "oracles.hpp"
#include "ocfield/estimate.hpp"

#include <cmath>
#include <cstdlib>

using namespace ocfield;

namespace {

SystemParams fig1_point(int L, double lambda) {
  SystemParams p;
  p.lambda = lambda;
  p.alpha = 3.5;
  p.sigma2 = 1e-5;
  p.d_r = 10.0;
  p.L = L;
  p.beta = std::pow(10.0, 0.3);
  return p;
}

double z_score(const OutageEstimate& e, double truth) {
  const double se = std::sqrt(truth * (1.0 - truth) / static_cast<double>(e.n_trials));
  return std::abs(e.p_hat - truth) / se;
}

}  // namespace

TEST_CASE("make_estimate") {
  const OutageEstimate e = make_estimate(25, 100, 9);
  CHECK(e.p_hat == 0.25);
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
  CHECK(e.master_seed == 9);
  CHECK(make_estimate(1, 1, 0).std_error == 0.0);
  CHECK(make_estimate(0, 1, 0).std_error == 0.0);
  CHECK_THROWS_AS(make_estimate(0, 0, 0), std::domain_error);
}

TEST_CASE("worker count from the environment") {
  setenv("OC_FIELD_THREADS", "3", 1);
  CHECK(default_worker_count() == 3);
  setenv("OC_FIELD_THREADS", "zero", 1);
  CHECK(default_worker_count() >= 1);
  setenv("OC_FIELD_THREADS", "-2", 1);
  CHECK(default_worker_count() >= 1);
  unsetenv("OC_FIELD_THREADS");
  CHECK(default_worker_count() >= 1);
}

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
  const Receiver rx[] = {Receiver::oc(), Receiver::mrc(), Receiver::zf(), Receiver::pzf(1)};
  const SystemParams p = fig1_point(3, 5e-4);
  RunOptions opt;
  opt.n_trials = 3000;
  opt.master_seed = 77;
  const std::vector<OutageEstimate> serial = estimate_outage_serial(p, rx, opt);
  for (const int w : {1, 2, 8}) {
    opt.workers = w;
    CHECK(estimate_outage(p, rx, opt) == serial);
  }

  SystemParams m = p;
  m.sigma2 = 0.0;
  opt.workers = 0;
  const MomentEstimate ref = estimate_sir_moments_serial(m, Receiver::oc(), opt);
  for (const int w : {1, 2, 8}) {
    opt.workers = w;
    const MomentEstimate par = estimate_sir_moments(m, Receiver::oc(), opt);
    CHECK(par.mean == ref.mean);
    CHECK(par.variance == ref.variance);
    CHECK(par.n_finite == ref.n_finite);
  }
}

TEST_CASE("seed changes the estimate, trial count is recorded") {
  const SystemParams p = fig1_point(2, 1e-3);
  RunOptions a;
  a.n_trials = 2000;
  RunOptions b = a;
  b.master_seed = 2;
  const OutageEstimate ea = estimate_outage(p, Receiver::oc(), a);
  CHECK(ea.n_trials == 2000);
  CHECK(ea.master_seed == 1);
  CHECK(ea.p_hat != estimate_outage(p, Receiver::oc(), b).p_hat);
}

TEST_CASE("MC matches the finite-disk outage") {
  // The simulated field is truncated to a disk, so compare against the exact
  // finite-disk expression rather than the infinite-plane one.
  RunOptions opt;
  opt.n_trials = 20000;
  opt.master_seed = 5;
  for (int L = 1; L <= 4; ++L) {
    for (const double lambda : {2e-4, 1e-3, 4e-3}) {
      const SystemParams p = fig1_point(L, lambda);
      const double truth = outage_cdf_finite_disk(p, disk_radius_for(lambda, opt.expected_count));
      if (truth < 1e-3 || truth > 1.0 - 1e-3) continue;
      CAPTURE(L);
      CAPTURE(lambda);
      CHECK(z_score(estimate_outage(p, Receiver::oc(), opt), truth) < 4.5);
    }
  }
}

TEST_CASE("fading-only MC matches the conditional outage") {
  RunOptions opt;
  opt.n_trials = 20000;
  for (int r = 0; r < 5; ++r) {
    Stream s(101, r);
    const SystemParams p = fig1_point(1 + r % 4, 1e-3);
    const NetworkRealization net = sample_ppp(p.lambda, 15.0, s);
    const std::vector<double> powers = received_powers(net, p.alpha);
    const double truth =
        conditional_outage_cdf(powers, p.sigma2, p.L, gamma_from_beta(p.beta, p.d_r, p.alpha));
    if (truth < 1e-3 || truth > 1.0 - 1e-3) continue;
    opt.master_seed = 1000 + r;
    CHECK(z_score(estimate_conditional_outage(net, p, opt), truth) < 4.5);
  }
}

TEST_CASE("L-th nearest interferer inside a radius") {
  // P(at least L points in the disk of radius r) = P(Poisson(lambda pi r^2) >= L)
  RunOptions opt;
  opt.n_trials = 20000;
  for (int L = 1; L <= 4; ++L) {
    const double lambda = 1e-3;
    const double radius = 30.0 * std::sqrt(L);
    const double truth = oracle::poisson_at_least(L, lambda * oracle::kPi * radius * radius);
    CHECK(z_score(estimate_lth_nearest_within(lambda, L, radius, opt), truth) < 4.5);
  }
  CHECK_THROWS_AS(estimate_lth_nearest_within(1e-3, 0, 1.0, opt), std::domain_error);
}

TEST_CASE("SIR scales as lambda^(-alpha/2) sample by sample") {
  // With a fixed expected count the geometry at 4 lambda is the geometry at
  // lambda shrunk by 1/2, so every SIR is multiplied by 2^-alpha.
  SystemParams p = fig1_point(2, 1e-3);
  p.sigma2 = 0.0;
  RunOptions opt;
  opt.n_trials = 4000;
  const MomentEstimate a = estimate_sir_moments(p, Receiver::oc(), opt);
  p.lambda *= 4.0;
  const MomentEstimate b = estimate_sir_moments(p, Receiver::oc(), opt);
  const double f = std::pow(2.0, -p.alpha);
  CHECK(b.mean == doctest::Approx(a.mean * f).epsilon(1e-10));
  CHECK(b.variance == doctest::Approx(a.variance * f * f).epsilon(1e-10));

  p.sigma2 = 1e-5;
  CHECK_THROWS_AS(estimate_sir_moments(p, Receiver::oc(), opt), std::domain_error);
}

TEST_CASE("dominance report") {
  SystemParams p = fig1_point(3, 1e-3);
  p.sigma2 = 0.0;
  const Receiver others[] = {Receiver::mrc(), Receiver::zf(), Receiver::pzf(1)};
  RunOptions opt;
  opt.n_trials = 2000;
  const DominanceReport r = check_oc_dominance(p, others, 2, 1e-9, opt);
  CHECK(r.trials == 2000);
  CHECK(r.comparisons == 2000 * 5);
  CHECK(r.violations == 0);
  CHECK(r.worst_ratio <= 1.0 + 1e-9);
  CHECK(r.worst_ratio > 0.5);
}

TEST_CASE("invalid runs") {
  RunOptions opt;
  opt.n_trials = 0;
  CHECK_THROWS_AS(estimate_outage(fig1_point(1, 1e-3), Receiver::oc(), opt), std::domain_error);
}
