#pragma once

/*
 * Exact determinants over Z[q].
 *
 *   det_bareiss   fraction-free single-step elimination; production path
 *   det_cofactor  Laplace expansion, order <= 6; independent oracle
 *   dodgson       iterated condensation; may be inapplicable
 *
 * Bareiss keeps every intermediate entry equal to a minor of the input, so
 * each division by the previous pivot is exact. A zero pivot is replaced by
 * the first nonzero entry to its right in the pivot row (column swap, sign
 * flipped); if there is none, the remaining block has a zero row and the
 * determinant is zero.
 */

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdist/poly.hpp"
#include "qdist/qmatrix.hpp"

namespace qdist {

inline Poly det_bareiss(PolyMatrix m) {
  const std::size_t n = m.order();
  if (n == 0) return 1;
  bool negate = false;
  Poly prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && m(k, j).is_zero()) ++j;
      if (j == n) return {};
      for (std::size_t r = k; r < n; ++r) std::swap(m(r, k), m(r, j));
      negate = !negate;
    }
    const Poly& pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m(i, j) * pivot - m(i, k) * m(k, j);
        m(i, j) = exact_div(num, prev);
      }
    }
    prev = pivot;
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

inline constexpr std::size_t kMaxCofactorOrder = 6;

namespace detail {

inline Poly laplace(const PolyMatrix& m, std::size_t row, std::vector<std::size_t>& cols) {
  if (cols.empty()) return 1;
  Poly acc;
  for (std::size_t idx = 0; idx < cols.size(); ++idx) {
    const Poly& a = m(row, cols[idx]);
    if (a.is_zero()) continue;
    const std::size_t c = cols[idx];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(idx));
    Poly term = a * laplace(m, row + 1, cols);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(idx), c);
    if (idx % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace detail

/// Laplace expansion along successive rows.
inline Poly det_cofactor(const PolyMatrix& m) {
  if (m.order() > kMaxCofactorOrder)
    throw std::invalid_argument("det_cofactor: order " + std::to_string(m.order()) + " exceeds oracle cap " +
                                std::to_string(kMaxCofactorOrder));
  std::vector<std::size_t> cols(m.order());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return detail::laplace(m, 0, cols);
}

/// Dodgson condensation. Each round replaces the order-k matrix by its
/// order-(k-1) matrix of connected 2x2 minors, divided entrywise by the
/// interior of the matrix two rounds back. Returns nullopt if one of those
/// divisors is the zero polynomial.
inline std::optional<Poly> dodgson(const PolyMatrix& m) {
  const std::size_t n = m.order();
  if (n == 0) return Poly(1);
  PolyMatrix prev;  // empty on the first round: divisors are all 1
  PolyMatrix cur = m;
  while (cur.order() > 1) {
    const std::size_t k = cur.order() - 1;
    PolyMatrix next(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        Poly num = cur(i, j) * cur(i + 1, j + 1) - cur(i, j + 1) * cur(i + 1, j);
        if (prev.order() == 0) {
          next(i, j) = std::move(num);
          continue;
        }
        const Poly& div = prev(i + 1, j + 1);
        if (div.is_zero()) return std::nullopt;
        next(i, j) = exact_div(num, div);
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur(0, 0);
}

/// Both sides of det(A) det(A^{1n}_{1n}) = det(A^1_1) det(A^n_n) - det(A^1_n) det(A^n_1),
/// where A^I_J deletes rows I and columns J.
struct DodgsonSides {
  Poly lhs;
  Poly rhs;
  bool holds() const { return lhs == rhs; }
};

inline DodgsonSides dodgson_identity_sides(const PolyMatrix& a) {
  const std::size_t n = a.order();
  if (n < 3) throw std::invalid_argument("check_dodgson_identity: order must be at least 3");
  const std::size_t f = 0, l = n - 1;
  DodgsonSides s;
  s.lhs = det_bareiss(a) * det_bareiss(minor(a, {f, l}, {f, l}));
  s.rhs = det_bareiss(minor(a, {f}, {f})) * det_bareiss(minor(a, {l}, {l})) -
          det_bareiss(minor(a, {f}, {l})) * det_bareiss(minor(a, {l}, {f}));
  return s;
}

inline bool check_dodgson_identity(const PolyMatrix& a) { return dodgson_identity_sides(a).holds(); }

}  // namespace qdist
