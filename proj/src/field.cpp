#include "ocfield/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ocfield {

std::string Receiver::name() const {
  switch (kind) {
    case Kind::OC:
      return "OC";
    case Kind::MRC:
      return "MRC";
    case Kind::ZF:
      return "ZF";
    case Kind::PZF:
      return "PZF(" + std::to_string(cancel) + ")";
  }
  return "?";
}

Receiver Receiver::parse(const std::string& text) {
  if (text == "OC") return oc();
  if (text == "MRC") return mrc();
  if (text == "ZF") return zf();
  if (text.size() > 5 && text.starts_with("PZF(") && text.back() == ')') {
    const std::string digits = text.substr(4, text.size() - 5);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return pzf(std::stoi(digits));
    }
  }
  throw std::invalid_argument("unknown receiver '" + text + "' (expected OC, MRC, ZF or PZF(k))");
}

double disk_radius_for(double lambda, double expected_count) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be > 0");
  if (!(expected_count > 0.0)) throw std::domain_error("expected_count must be > 0");
  return std::sqrt(expected_count / (lambda * std::numbers::pi));
}

NetworkRealization sample_ppp(double lambda, double expected_count, Stream& rng) {
  NetworkRealization net;
  net.disk_radius = disk_radius_for(lambda, expected_count);
  const auto n = rng.poisson(expected_count);
  net.positions.reserve(static_cast<size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = net.disk_radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    net.positions.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return net;
}

ChannelDraw draw_channels(int L, int n, Stream& rng) {
  if (L < 1 || n < 0) throw std::domain_error("draw_channels: need L >= 1 and n >= 0");
  ChannelDraw ch;
  ch.desired.resize(L);
  for (Complex& z : ch.desired) z = rng.complex_normal();
  ch.interferers.assign(n, ComplexVector(L));
  for (ComplexVector& c : ch.interferers) {
    for (Complex& z : c) z = rng.complex_normal();
  }
  return ch;
}

std::vector<double> received_powers(const NetworkRealization& net, double alpha) {
  std::vector<double> p;
  p.reserve(net.positions.size());
  for (const Point& x : net.positions) p.push_back(std::pow(x.dist_sq(), -alpha / 2.0));
  return p;
}

HermitianMatrix build_covariance(const NetworkRealization& net, const ChannelDraw& ch,
                                 double sigma2, double alpha) {
  const int L = static_cast<int>(ch.desired.size());
  if (ch.interferers.size() != net.positions.size()) {
    throw std::domain_error("build_covariance: channel count does not match node count");
  }
  HermitianMatrix r(L);
  for (size_t k = 0; k < net.positions.size(); ++k) {
    r.add_outer(std::pow(net.positions[k].dist_sq(), -alpha / 2.0), ch.interferers[k]);
  }
  r.add_diagonal(sigma2);
  return r;
}

double oc_sinr(const HermitianMatrix& covariance, const ChannelDraw& ch, const SystemParams& params) {
  return std::pow(params.d_r, -params.alpha) * quadratic_form_inverse(ch.desired, covariance);
}

double oc_sinr(const NetworkRealization& net, const ChannelDraw& ch, const SystemParams& params) {
  return oc_sinr(build_covariance(net, ch, params.sigma2, params.alpha), ch, params);
}

double combiner_sinr(std::span<const Complex> w, const NetworkRealization& net,
                     const ChannelDraw& ch, const SystemParams& params) {
  const double w_sq = norm_sq(w);
  if (w_sq == 0.0) throw std::domain_error("combiner_sinr: zero weight vector");
  const double signal = std::norm(inner(w, ch.desired));
  double noise = params.sigma2 * w_sq;
  for (size_t k = 0; k < net.positions.size(); ++k) {
    noise += std::pow(net.positions[k].dist_sq(), -params.alpha / 2.0) *
             std::norm(inner(w, ch.interferers[k]));
  }
  if (signal == 0.0) return 0.0;
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(params.d_r, -params.alpha) * signal / noise;
}

std::vector<int> strongest_interferers(const NetworkRealization& net) {
  std::vector<int> idx(net.positions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&net](int a, int b) {
    return net.positions[a].dist_sq() < net.positions[b].dist_sq();
  });
  return idx;
}

ComplexVector receiver_weights(const Receiver& rx, const NetworkRealization& net,
                               const ChannelDraw& ch, const SystemParams& params) {
  const int L = static_cast<int>(ch.desired.size());
  int cancel = 0;
  switch (rx.kind) {
    case Receiver::Kind::OC:
      return solve(build_covariance(net, ch, params.sigma2, params.alpha), ch.desired);
    case Receiver::Kind::MRC:
      return ch.desired;
    case Receiver::Kind::ZF:
      cancel = L - 1;
      break;
    case Receiver::Kind::PZF:
      if (rx.cancel < 0 || rx.cancel > L - 1) {
        throw std::domain_error("PZF cancellation count must lie in [0, L-1]");
      }
      cancel = rx.cancel;
      break;
  }
  cancel = std::min(cancel, net.node_count());
  const std::vector<int> order = strongest_interferers(net);
  std::vector<ComplexVector> basis;
  basis.reserve(cancel);
  for (int i = 0; i < cancel; ++i) basis.push_back(ch.interferers[order[i]]);
  return project_out(ch.desired, basis);
}

double receiver_sinr(const Receiver& rx, const NetworkRealization& net, const ChannelDraw& ch,
                     const SystemParams& params) {
  if (rx.kind == Receiver::Kind::OC) return oc_sinr(net, ch, params);
  const ComplexVector w = receiver_weights(rx, net, ch, params);
  if (norm_sq(w) == 0.0) return 0.0;
  return combiner_sinr(w, net, ch, params);
}

double conditional_outage_cdf(std::span<const double> powers, double sigma2, int L, double gamma) {
  if (L < 1) throw std::domain_error("L must be >= 1");
  if (!(sigma2 >= 0.0) || !(gamma >= 0.0)) throw std::domain_error("sigma2 and gamma must be >= 0");

  // e_k = b_k(P gamma) / prod_j (1 + P_j gamma), k < L, built one node at a
  // time: e_k <- (e_k + p e_{k-1}) / (1 + p). Every e_k stays in [0, 1], so
  // the product never has to be formed.
  std::vector<double> e(L, 0.0);
  e[0] = 1.0;
  for (const double p_raw : powers) {
    if (!(p_raw > 0.0)) throw std::domain_error("received powers must be > 0");
    const double p = p_raw * gamma;
    const double keep = 1.0 / (1.0 + p);
    const double take = p * keep;
    for (int k = L - 1; k >= 1; --k) e[k] = keep * e[k] + take * e[k - 1];
    e[0] *= keep;
  }

  // a_i e^{-sigma2 gamma} / prod = sum_{k<=i} pois(i - k) e_k with pois the
  // Poisson(sigma2 gamma) pmf.
  const double mu = sigma2 * gamma;
  std::vector<double> pois(L);
  pois[0] = std::exp(-mu);
  for (int m = 1; m < L; ++m) pois[m] = pois[m - 1] * mu / m;

  double success = 0.0;
  for (int i = 0; i < L; ++i) {
    for (int k = 0; k <= i; ++k) success += pois[i - k] * e[k];
  }
  return std::clamp(1.0 - success, 0.0, 1.0);
}

}  // namespace ocfield
