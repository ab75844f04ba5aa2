#include "stged/core/rng.hpp"

#include <cmath>

namespace stged {

std::size_t Rng::index(std::size_t n) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

unsigned Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  unsigned k = 0;
  double p = uniform_open_closed();
  while (p > limit) {
    ++k;
    p *= uniform_open_closed();
  }
  return k;
}

}  // namespace stged
