// Products in the dual scale: how much of the convolution bound random
// sequences use, per pair of levels.

#include <cstdio>
#include <random>

#include "fockm/dual_algebra.hpp"

int main() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  auto random_sequence = [&](std::size_t len) {
    fockm::DualSequence b;
    for (std::size_t i = 0; i < len; ++i) b.coeffs.emplace_back(nd(rng), nd(rng));
    return b;
  };
  std::printf("%2s %2s %10s %12s\n", "p", "q", "A(q-p)", "worst ratio");
  for (int p = 1; p <= 3; ++p)
    for (int q = p + 1; q <= p + 3; ++q) {
      double worst = 0.0;
      for (int i = 0; i < 500; ++i)
        worst = std::max(worst, fockm::vage_check(random_sequence(1 + i % 25), random_sequence(1 + i % 17), p, q).ratio());
      std::printf("%2d %2d %10.6f %12.6f\n", p, q, fockm::vage_constant(q - p), worst);
    }
}
