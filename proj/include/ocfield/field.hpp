#pragma once

// Physical model of one snapshot: Poisson field of single-antenna
// interferers around a receiver with L antennas at the origin, i.i.d.
// Rayleigh channels, and the post-combining SINR of several receivers.

#include "ocfield/analytic.hpp"
#include "ocfield/linalg.hpp"
#include "ocfield/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace ocfield {

struct Point {
  double x;
  double y;
  double dist_sq() const { return x * x + y * y; }
};

struct NetworkRealization {
  std::vector<Point> positions;
  double disk_radius = 0.0;

  int node_count() const { return static_cast<int>(positions.size()); }
};

struct ChannelDraw {
  ComplexVector desired;
  std::vector<ComplexVector> interferers;
};

struct Receiver {
  enum class Kind { OC, MRC, ZF, PZF };
  Kind kind = Kind::OC;
  int cancel = 0;  // PZF only: interferers nulled

  static Receiver oc() { return {Kind::OC, 0}; }
  static Receiver mrc() { return {Kind::MRC, 0}; }
  static Receiver zf() { return {Kind::ZF, 0}; }
  static Receiver pzf(int k) { return {Kind::PZF, k}; }

  /// "OC", "MRC", "ZF" or "PZF(k)".
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument.
  static Receiver parse(const std::string& text);

  bool operator==(const Receiver&) const = default;
};

struct SinrSample {
  Receiver receiver;
  double value;  // >= 0, may be +infinity
  long long trial_index;
};

/// Disk radius holding `expected_count` nodes on average at density lambda.
double disk_radius_for(double lambda, double expected_count);

NetworkRealization sample_ppp(double lambda, double expected_count, Stream& rng);
ChannelDraw draw_channels(int L, int n, Stream& rng);

/// Received powers |X_k|^-alpha, in node order.
std::vector<double> received_powers(const NetworkRealization& net, double alpha);

/// sum_k |X_k|^-alpha c_k c_k^H + sigma2 I.
HermitianMatrix build_covariance(const NetworkRealization& net, const ChannelDraw& ch,
                                 double sigma2, double alpha);

double oc_sinr(const HermitianMatrix& covariance, const ChannelDraw& ch, const SystemParams& params);
double oc_sinr(const NetworkRealization& net, const ChannelDraw& ch, const SystemParams& params);

/// d_r^-alpha |w^H c_r|^2 / (w^H R w), with w^H R w summed over interferers
/// directly. Throws std::domain_error for w = 0.
double combiner_sinr(std::span<const Complex> w, const NetworkRealization& net,
                     const ChannelDraw& ch, const SystemParams& params);

/// Node indices ordered by decreasing mean received power (increasing
/// distance), ties by index.
std::vector<int> strongest_interferers(const NetworkRealization& net);

/// Combining weights of a linear receiver. OC returns R^{-1} c_r and needs
/// R positive definite; the others are projections of c_r.
ComplexVector receiver_weights(const Receiver& rx, const NetworkRealization& net,
                               const ChannelDraw& ch, const SystemParams& params);

/// SINR of any receiver; a zero ZF/PZF weight yields 0.
double receiver_sinr(const Receiver& rx, const NetworkRealization& net, const ChannelDraw& ch,
                     const SystemParams& params);

/// Outage of optimum combining conditioned on the received powers P_j:
/// 1 - sum_{i<L} a_i gamma^i / (e^{sigma2 gamma} prod_j (1 + P_j gamma)).
double conditional_outage_cdf(std::span<const double> powers, double sigma2, int L, double gamma);

}  // namespace ocfield
