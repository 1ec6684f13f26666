// Prints int x^n K_m(x) dx next to (n!)^m for small m and n.

#include <cmath>
#include <cstdio>

#include "fockm/radial_kernel.hpp"

int main() {
  fockm::QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  std::printf("%2s %2s %22s %22s %10s\n", "m", "n", "moment", "(n!)^m", "rel err");
  for (int m = 1; m <= 4; ++m)
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto r = fockm::km_moment_detailed(m, n, cfg);
      const double exact = std::exp(fockm::log_weight(m, n));
      std::printf("%2d %2zu %22.15g %22.15g %10.2e\n", m, n, r.value, exact, fockm::relative_error(r.value, exact));
    }
}
