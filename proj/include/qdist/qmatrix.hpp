#pragma once

// Square matrices over the polynomial ring, the four distance-matrix
// constructions of a weighted tree, and minors by row/column deletion.
//
// Matrix indices are 0-based; row r of a tree matrix belongs to vertex v_{r+1}.

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdist/poly.hpp"
#include "qdist/tree.hpp"

namespace qdist {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static PolyMatrix identity(std::size_t n) {
    PolyMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Integer matrix given row by row.
  static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows) {
    PolyMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("PolyMatrix::from_rows: matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t order() const noexcept { return n_; }

  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  PolyMatrix transposed() const {
    PolyMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Poly> entries_;
};

namespace detail {

template <typename EntryFn>
PolyMatrix build_from_distances(const WeightedTree& t, EntryFn entry) {
  const DistanceTable d = all_pairs_distances(t);
  const std::size_t n = t.order();
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(d(i + 1, j + 1));
  return m;
}

}  // namespace detail

/// D(T): constant entries d(v_i, v_j).
inline PolyMatrix build_d(const WeightedTree& t) {
  return detail::build_from_distances(t, [](Weight d) { return Poly(d); });
}

/// D_q(T): entries [d(v_i, v_j)].
inline PolyMatrix build_dq(const WeightedTree& t) {
  return detail::build_from_distances(t, [](Weight d) { return qbracket(static_cast<std::size_t>(d)); });
}

/// D*_q(T): entries q^d(v_i, v_j); the diagonal is 1.
inline PolyMatrix build_dq_star(const WeightedTree& t) {
  return detail::build_from_distances(t, [](Weight d) { return qpower(static_cast<std::size_t>(d)); });
}

/// D(T) + xJ, with the ring indeterminate standing in for x.
inline PolyMatrix build_d_plus_xJ(const WeightedTree& t) {
  return detail::build_from_distances(t, [](Weight d) { return Poly(d) + indeterminate(); });
}

/// Deletes the given rows and columns (0-based). Both sets must have the same
/// size and contain distinct in-range indices.
inline PolyMatrix minor(const PolyMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t n = m.order();
  const std::set<std::size_t> drop_r(rows.begin(), rows.end()), drop_c(cols.begin(), cols.end());
  if (drop_r.size() != rows.size() || drop_c.size() != cols.size())
    throw std::invalid_argument("minor: repeated deletion index");
  if (rows.size() != cols.size()) throw std::invalid_argument("minor: unbalanced deletion sets");
  if ((!drop_r.empty() && *drop_r.rbegin() >= n) || (!drop_c.empty() && *drop_c.rbegin() >= n))
    throw std::out_of_range("minor: deletion index out of range for order " + std::to_string(n));

  std::vector<std::size_t> keep_r, keep_c;
  for (std::size_t i = 0; i < n; ++i) {
    if (!drop_r.count(i)) keep_r.push_back(i);
    if (!drop_c.count(i)) keep_c.push_back(i);
  }
  PolyMatrix out(keep_r.size());
  for (std::size_t i = 0; i < keep_r.size(); ++i)
    for (std::size_t j = 0; j < keep_c.size(); ++j) out(i, j) = m(keep_r[i], keep_c[j]);
  return out;
}

/// P M P^T for the permutation sending index i to perm[i].
inline PolyMatrix permuted(const PolyMatrix& m, const std::vector<std::size_t>& perm) {
  const std::size_t n = m.order();
  if (perm.size() != n) throw std::invalid_argument("permuted: size mismatch");
  PolyMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(perm[i], perm[j]) = m(i, j);
  return out;
}

}  // namespace qdist
