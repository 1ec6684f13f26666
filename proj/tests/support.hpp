#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "fockm/taylor.hpp"

namespace fockm::testing {

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline std::complex<double> random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  return {re, nd(rng)};
}

inline TaylorCoeffs random_taylor(std::mt19937_64& rng, std::size_t max_degree) {
  const std::size_t deg = std::uniform_int_distribution<std::size_t>(0, max_degree)(rng);
  std::vector<std::complex<double>> c(deg + 1);
  for (auto& x : c) x = random_complex(rng);
  return TaylorCoeffs(std::move(c));
}

}  // namespace fockm::testing
