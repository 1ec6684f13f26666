// The adjoint of multiplication by z in F_3, three ways, on a polynomial with
// integer coefficients.

#include <iostream>

#include "fockm/operators.hpp"

namespace {

void print(const char* label, const fockm::Taylor<fockm::BigInt>& f) {
  std::cout << label << ':';
  for (std::size_t n = 0; n < f.size(); ++n)
    if (f[n] != 0) std::cout << ' ' << f[n] << "*z^" << n;
  std::cout << '\n';
}

}  // namespace

int main() {
  const int m = 3;
  const fockm::Taylor<fockm::BigInt> f({1, 2, 0, 5, 1});
  print("f", f);
  print("word (BA)^2 B", fockm::apply_a_star_word(f, m));
  print("Stirling form", fockm::apply_a_star_stirling(f, m));
  print("coefficients ", fockm::apply_a_star(f, m));
  print("[a*, a] f    ", fockm::commutator_apply(f, m));
}
