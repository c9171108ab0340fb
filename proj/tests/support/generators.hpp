#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "oscphase/types.hpp"

namespace testgen {

// Seeded source for property tests; every draw is reproducible from the seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  oscphase::Sign sign() { return integer(0, 1) ? oscphase::Sign::plus : oscphase::Sign::minus; }

  // Complex z in the box, at least min_gap away from the poles of Gamma.
  oscphase::Complex gamma_argument(double re_lo, double re_hi, double im_max, double min_gap) {
    for (;;) {
      const oscphase::Complex z(uniform(re_lo, re_hi), uniform(-im_max, im_max));
      const double nearest = std::min(0.0, std::round(z.real()));
      if (std::abs(z - nearest) >= min_gap || z.real() > 0.5) return z;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testgen
