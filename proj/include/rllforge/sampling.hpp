#pragma once
// Seeded complex-plane sampling. The bit mapping from mt19937_64 output to
// doubles is explicit so identical seeds reproduce identical samples on any
// platform (std::uniform_real_distribution is implementation-defined).

#include <cstdint>
#include <functional>
#include <random>

#include "rllforge/types.hpp"

namespace rllf {

// Declarative sampling parameters; recorded in every CheckReport.
struct SampleSpec {
  std::uint64_t seed = 0;
  int count = 100;
  double lo = -2.0;
  double hi = 2.0;
  double pole_guard = 1e-6;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, double lo = -2.0, double hi = 2.0)
      : rng_(seed), lo_(lo), hi_(hi) {}
  explicit Sampler(const SampleSpec& s) : Sampler(s.seed, s.lo, s.hi) {}

  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform() { return lo_ + (hi_ - lo_) * uniform01(); }
  cplx point() {
    double re = uniform();  // evaluation order of re/im fixed explicitly
    double im = uniform();
    return {re, im};
  }
  // Resample until dist(z) clears the guard; dist measures distance to the
  // nearest forbidden point (pole, tag collision, ...).
  cplx point_guarded(const std::function<double(cplx)>& dist, double guard,
                     int max_tries = 1000) {
    for (int k = 0; k < max_tries; ++k) {
      cplx z = point();
      if (dist(z) > guard) return z;
    }
    throw PoleError("sampler could not clear the pole guard");
  }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
  double lo_, hi_;
};

}  // namespace rllf
