#include <doctest.h>

#include "ocfield/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace ocfield;

TEST_CASE("philox4x32-10 known answers") {
  using W = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        W{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Stream a(42, 7);
  Stream b(42, 7);
  Stream c(42, 8);
  Stream d(43, 7);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniform stays in the open interval") {
  Stream s(1, 0);
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("exponential via -log(u): Kolmogorov-Smirnov") {
  Stream s(2024, 3);
  const int n = 100000;
  std::vector<double> x(n);
  for (double& v : x) v = -std::log(s.uniform());
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = 1.0 - std::exp(-x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - (i + 1.0) / n)});
  }
  CHECK(d < 0.01);
}

TEST_CASE("complex normal moments") {
  Stream s(5, 5);
  const int n = 200000;
  double m2 = 0.0;
  double m4 = 0.0;
  std::complex<double> mean{};
  std::complex<double> pseudo{};
  for (int i = 0; i < n; ++i) {
    const auto z = s.complex_normal();
    mean += z;
    pseudo += z * z;
    m2 += std::norm(z);
    m4 += std::norm(z) * std::norm(z);
  }
  CHECK(std::abs(mean / double(n)) < 0.01);
  CHECK(std::abs(pseudo / double(n)) < 0.01);
  CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.01));
  // |z|^2 ~ Exp(1), so E|z|^4 = 2
  CHECK(m4 / n == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("normal moments") {
  Stream s(9, 1);
  const int n = 200000;
  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m1 += x;
    m2 += x * x;
  }
  CHECK(std::abs(m1 / n) < 0.01);
  CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("poisson mean and variance") {
  for (const double mean : {0.0, 0.3, 4.0, 10.0, 10.5, 100.0, 2500.0}) {
    CAPTURE(mean);
    Stream s(11, static_cast<std::uint64_t>(mean * 10));
    const int n = 100000;
    double m1 = 0.0;
    double m2 = 0.0;
    std::int64_t lo = 1 << 30;
    for (int i = 0; i < n; ++i) {
      const auto k = s.poisson(mean);
      lo = std::min(lo, k);
      m1 += static_cast<double>(k);
      m2 += static_cast<double>(k) * static_cast<double>(k);
    }
    const double mu = m1 / n;
    const double var = m2 / n - mu * mu;
    CHECK(lo >= 0);
    if (mean == 0.0) {
      CHECK(m1 == 0.0);
      continue;
    }
    // five standard errors of the sample mean
    CHECK(std::abs(mu - mean) <= 5.0 * std::sqrt(mean / n));
    CHECK(var == doctest::Approx(mean).epsilon(0.03));
  }
  Stream s(1, 1);
  CHECK_THROWS_AS(s.poisson(-1.0), std::domain_error);
}
