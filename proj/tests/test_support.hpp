#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qdist/poly.hpp"
#include "qdist/qmatrix.hpp"

namespace qdist::testing {

inline Poly random_poly(std::mt19937_64& rng, std::size_t max_degree = 12, int bound = 50) {
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-bound, bound);
  std::vector<BigInt> cs(deg(rng) + 1);
  for (auto& c : cs) c = coeff(rng);
  return Poly(std::move(cs));
}

inline Poly random_nonzero_poly(std::mt19937_64& rng, std::size_t max_degree = 12, int bound = 50) {
  Poly p;
  while (p.is_zero()) p = random_poly(rng, max_degree, bound);
  return p;
}

/// Integer matrix with entries uniform in [-bound, bound].
inline PolyMatrix random_int_matrix(std::mt19937_64& rng, std::size_t n, int bound = 9) {
  std::uniform_int_distribution<int> e(-bound, bound);
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = e(rng);
  return m;
}

/// Random permutation of 0..n-1.
inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace qdist::testing
