#include "ocfield/rng.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ocfield {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

Stream::Stream(std::uint64_t master_seed, std::uint64_t stream_id)
    : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
      stream_id_(stream_id) {}

void Stream::refill() {
  buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                           static_cast<std::uint32_t>(stream_id_),
                           static_cast<std::uint32_t>(stream_id_ >> 32)},
                          key_);
  ++block_;
  used_ = 0;
}

std::uint64_t Stream::next_u64() {
  if (used_ > 2) refill();
  const std::uint64_t lo = buffer_[used_];
  const std::uint64_t hi = buffer_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double Stream::uniform() {
  // 53 random bits centred in their cell: strictly inside (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

std::complex<double> Stream::complex_normal() {
  // |z|^2 ~ Exp(1) with uniform phase.
  const double r = std::sqrt(-std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::int64_t Stream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::domain_error("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;

  if (mean <= 10.0) {
    double p = std::exp(-mean);
    double cdf = p;
    const double u = uniform();
    std::int64_t k = 0;
    while (u > cdf && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

  // Hormann's transformed rejection with squeeze (PTRS).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + kf * loglam - boost::math::lgamma(kf + 1.0);
    if (lhs <= rhs) return static_cast<std::int64_t>(kf);
  }
}

}  // namespace ocfield
