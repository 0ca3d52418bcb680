#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <utility>

namespace seesim {

// Keyed splitmix64 stream. A stream is identified by a key hashed from
// (seed, purpose, trial, ...) components, so every draw site owns an
// independent substream and results do not depend on evaluation order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : state_(key) {}

  static std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts);

  std::uint64_t next_u64();

  // uniform in (0, 1]
  double next_unit();

  // two independent standard normals (Box-Muller)
  std::pair<double, double> next_gaussian_pair();

  // circularly-symmetric complex Gaussian with E|x|^2 = variance
  std::complex<double> next_cn(double variance);

 private:
  std::uint64_t state_;
};

}  // namespace seesim
