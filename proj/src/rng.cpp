#include "seesim/rng.hpp"

#include <cmath>
#include <numbers>

namespace seesim {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::derive_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t key = 0x5eed0fca11b07ULL;
  for (std::uint64_t p : parts) key = finalize(key + kGamma + finalize(p + kGamma));
  return key;
}

std::uint64_t RandomStream::next_u64() {
  state_ += kGamma;
  return finalize(state_);
}

double RandomStream::next_unit() {
  // 53 uniform bits mapped to (0, 1]
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::pair<double, double> RandomStream::next_gaussian_pair() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

std::complex<double> RandomStream::next_cn(double variance) {
  auto [re, im] = next_gaussian_pair();
  const double s = std::sqrt(0.5 * variance);
  return {s * re, s * im};
}

}  // namespace seesim
