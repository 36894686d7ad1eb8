#pragma once

// Counter-based random streams. A stream is fully determined by
// (master_seed, stream_id); the n-th draw depends on nothing else, so trials
// can run in any order on any number of threads.

#include <array>
#include <complex>
#include <cstdint>

namespace ocfield {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class Stream {
 public:
  Stream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform();
  double normal();
  /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal();
  /// Poisson variate: inversion for mean <= 10, PTRS rejection above.
  std::int64_t poisson(double mean);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace ocfield
