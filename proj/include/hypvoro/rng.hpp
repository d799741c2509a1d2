#pragma once

#include <cmath>
#include <cstdint>

namespace hypvoro {

// Counter-based stream built on the splitmix64 finalizer. A stream is fully
// determined by (seed, stream); draws depend only on how many values were
// consumed, never on thread schedule or call site, so ensembles keyed by
// (seed, item-index) reproduce bit-identically under any parallel layout.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(mix(seed) ^ mix(stream ^ 0xd2b74407b1ce6e93ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix_out(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // Uniform integer in [0, n). Fixed-point multiply; bias is O(n / 2^64).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Poisson draw: multiplicative inversion below kPtrsCutoff, Hormann's PTRS
  // transformed rejection above it. Exact distribution at every mean.
  std::uint64_t poisson(double mean);

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    return mix_out(x);
  }

 private:
  static std::uint64_t mix_out(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

inline constexpr double kPtrsCutoff = 10.0;

inline std::uint64_t CounterRng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean < kPtrsCutoff) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = next_double();
    while (prod > limit) {
      ++k;
      prod *= next_double();
    }
    return k;
  }
  // PTRS (Hormann 1993). Valid for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = next_double() - 0.5;
    double v = next_double();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        kf * log_mean - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace hypvoro
