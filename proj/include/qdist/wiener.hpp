#pragma once

#include "qdist/poly.hpp"
#include "qdist/tree.hpp"

namespace qdist {

/// W(T, q) = sum_{i<j} q^d(v_i, v_j).
inline Poly wiener_poly(const WeightedTree& t) {
  const DistanceTable d = all_pairs_distances(t);
  std::vector<BigInt> cs;
  for (Vertex i = 1; i <= t.order(); ++i) {
    for (Vertex j = i + 1; j <= t.order(); ++j) {
      const auto k = static_cast<std::size_t>(d(i, j));
      if (k >= cs.size()) cs.resize(k + 1);
      cs[k] += 1;
    }
  }
  return Poly(std::move(cs));
}

/// W'(T, 1): the sum of all pairwise distances.
inline BigInt wiener_index(const WeightedTree& t) { return wiener_poly(t).derivative_at_one(); }

}  // namespace qdist
