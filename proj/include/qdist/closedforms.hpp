#pragma once

/*
 * Closed-form determinant formulas for tree distance matrices, evaluated
 * symbolically in Z[q] (or Z[x]) so they can be compared exactly against
 * det_bareiss.
 *
 * The q-analogue for D_q(T) is stated as prod [2a_k] times a sum of
 * fractions [a_i][a_j][a_i+a_j] / ([2a_i][2a_j]). Here every term is cleared
 * first: [a_i][a_j][a_i+a_j] * prod_{k != i,j} [2a_k]. That is the same
 * polynomial, and it never leaves the ring.
 */

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdist/exactdet.hpp"
#include "qdist/poly.hpp"
#include "qdist/qmatrix.hpp"
#include "qdist/tree.hpp"

namespace qdist {

/// Edge weights a_1..a_{n-1}. Order is kept (it fixes the term layout of
/// f_cleared) but every formula here is symmetric in it.
class WeightMultiset {
 public:
  explicit WeightMultiset(std::vector<Weight> ws) : ws_(std::move(ws)) {
    if (ws_.empty()) throw std::invalid_argument("WeightMultiset: need at least one weight");
    for (Weight w : ws_)
      if (w < 1) throw std::invalid_argument("WeightMultiset: weights must be positive, got " + std::to_string(w));
  }

  static WeightMultiset of(const WeightedTree& t) { return WeightMultiset(t.weights()); }

  std::size_t size() const noexcept { return ws_.size(); }
  std::size_t tree_order() const noexcept { return ws_.size() + 1; }
  Weight operator[](std::size_t i) const { return ws_[i]; }
  const std::vector<Weight>& values() const noexcept { return ws_; }

 private:
  std::vector<Weight> ws_;
};

namespace detail {

inline Poly br(Weight a) { return qbracket(static_cast<std::size_t>(a)); }

inline BigInt signed_unit(std::size_t exponent) { return exponent % 2 == 0 ? BigInt(1) : BigInt(-1); }

}  // namespace detail

/// -(n-1)(-2)^(n-2).
inline BigInt graham_pollak(std::size_t n) {
  if (n < 2) throw std::invalid_argument("graham_pollak: n must be at least 2");
  BigInt p = 1;
  for (std::size_t i = 0; i + 2 < n; ++i) p *= -2;
  return -BigInt(n - 1) * p;
}

/// (-1)^(n-1) 2^(n-2) (prod a_i) (sum a_i).
inline BigInt bkn_det(const WeightMultiset& w) {
  const std::size_t n = w.tree_order();
  BigInt prod = 1, sum = 0;
  for (Weight a : w.values()) {
    prod *= a;
    sum += a;
  }
  BigInt two_pow = BigInt(1) << (n - 2);
  return detail::signed_unit(n - 1) * two_pow * prod * sum;
}

/// det(D(T) + xJ) = (-1)^(n-1) 2^(n-2) (prod a_i) (2x + sum a_i), as a polynomial in x.
inline Poly bkn_det_xj(const WeightMultiset& w) {
  const std::size_t n = w.tree_order();
  BigInt prod = 1, sum = 0;
  for (Weight a : w.values()) {
    prod *= a;
    sum += a;
  }
  const BigInt scale = detail::signed_unit(n - 1) * (BigInt(1) << (n - 2)) * prod;
  return Poly{scale * sum, scale * 2};
}

/// det(D*_q(T)) = prod (1 - q^(2a_i)).
inline Poly dq_star_closed(const WeightMultiset& w) {
  Poly acc = 1;
  for (Weight a : w.values()) acc *= Poly(1) - qpower(2 * static_cast<std::size_t>(a));
  return acc;
}

/// Index pairs (0-based) of the cleared sum: (1,2), (n-2,n-1) and (i,i+2) for
/// i = 1..n-3 in 1-based weight positions. Each index occurs in exactly two
/// pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> cleared_sum_pairs(std::size_t num_weights) {
  const std::size_t m = num_weights;
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 1}, {m - 2, m - 1}};
  for (std::size_t i = 0; i + 3 <= m; ++i) pairs.emplace_back(i, i + 2);
  return pairs;
}

/// prod [2a_k] times the symmetric function sum [a_i][a_j][a_i+a_j] / ([2a_i][2a_j]),
/// with each term cleared of its denominator. Needs at least three weights.
inline Poly f_cleared(const WeightMultiset& w) {
  const std::size_t m = w.size();
  if (m < 3) throw std::invalid_argument("f_cleared: needs at least 3 weights (n >= 4)");
  std::vector<Poly> doubled;
  doubled.reserve(m);
  for (Weight a : w.values()) doubled.push_back(detail::br(2 * a));

  Poly acc;
  for (const auto& [i, j] : cleared_sum_pairs(m)) {
    Poly term = detail::br(w[i]) * detail::br(w[j]) * detail::br(w[i] + w[j]);
    for (std::size_t k = 0; k < m; ++k)
      if (k != i && k != j) term *= doubled[k];
    acc += term;
  }
  return acc;
}

/// Closed form of det(D_q(T)), depending only on the weights.
inline Poly dq_closed(const WeightMultiset& w) {
  switch (w.size()) {
    case 1: return -(detail::br(w[0]) * detail::br(w[0]));
    case 2: return Poly(2) * detail::br(w[0]) * detail::br(w[1]) * detail::br(w[0] + w[1]);
    default: {
      Poly f = f_cleared(w);
      return w.size() % 2 == 0 ? f : -f;  // (-1)^(n-1) with n-1 = w.size()
    }
  }
}

/// det(D_q(T)) with row v_n and column v_1 deleted, when v_1 and v_n are
/// pendant: [a_first][a_last] prod [2a] over the other edges.
inline Poly corner_minor_closed(Weight w_first, Weight w_last, const std::vector<Weight>& w_rest) {
  Poly acc = detail::br(w_first) * detail::br(w_last);
  for (Weight a : w_rest) acc *= detail::br(2 * a);
  return acc;
}

/// (1 - q^2)^(n-1).
inline Poly dq_star_simple(std::size_t n) {
  if (n < 2) throw std::invalid_argument("dq_star_simple: n must be at least 2");
  return pow(Poly{1, 0, -1}, n - 1);
}

/// (-1)^(n-1) (n-1) (1+q)^(n-2).
inline Poly dq_simple(std::size_t n) {
  if (n < 2) throw std::invalid_argument("dq_simple: n must be at least 2");
  return Poly(detail::signed_unit(n - 1) * BigInt(n - 1)) * pow(Poly{1, 1}, n - 2);
}

// ---------------------------------------------------------------------------
// Identities used inside the inductive argument, as executable checks.

/// Weight of the unique edge at pendant vertex v.
inline Weight pendant_weight(const WeightedTree& t, Vertex v) {
  if (!t.is_pendant(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " is not pendant");
  return t.neighbors(v).front().second;
}

/// Column d_v - q^a d_s of D*_q(T), for pendant v with neighbor s over an edge
/// of weight a. Every entry except position v vanishes; position v holds 1 - q^(2a).
inline std::vector<Poly> pendant_column_residual(const WeightedTree& t, Vertex v) {
  if (!t.is_pendant(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " is not pendant");
  const auto [s, a] = t.neighbors(v).front();
  const PolyMatrix m = build_dq_star(t);
  const Poly shift = qpower(static_cast<std::size_t>(a));
  std::vector<Poly> col(t.order());
  for (std::size_t r = 0; r < t.order(); ++r) col[r] = m(r, v - 1) - shift * m(r, s - 1);
  return col;
}

/// Edge weights split as (a_first, a_last, rest) for a tree with pendant v_1
/// and v_n. rest keeps edge order.
struct PendantSplit {
  Weight first = 0;
  Weight last = 0;
  std::vector<Weight> rest;
};

inline PendantSplit split_pendant_weights(const WeightedTree& t) {
  const std::size_t n = t.order();
  if (n < 3 || !t.is_pendant(1) || !t.is_pendant(n))
    throw std::invalid_argument("split_pendant_weights: v_1 and v_n must be pendant (n >= 3)");
  PendantSplit s;
  for (const auto& e : t.edges()) {
    if (e.u == 1 || e.v == 1)
      s.first = e.w;
    else if (e.u == n || e.v == n)
      s.last = e.w;
    else
      s.rest.push_back(e.w);
  }
  return s;
}

/// det(D) + [2b_1] det(D^1_1) + [2b_{n-1}] det(D^n_n) + [2b_1][2b_{n-1}] det(D^{1n}_{1n})
/// for D = D_q(T) with pendant v_1, v_n. The identity says this is zero.
inline Poly pendant_recurrence_residual(const WeightedTree& t) {
  const std::size_t n = t.order();
  if (n < 4) throw std::invalid_argument("pendant_recurrence_residual: needs n >= 4");
  const PendantSplit s = split_pendant_weights(t);
  const PolyMatrix d = build_dq(t);
  const std::size_t f = 0, l = n - 1;
  const Poly b1 = detail::br(2 * s.first), bn = detail::br(2 * s.last);
  return det_bareiss(d) + b1 * det_bareiss(minor(d, {f}, {f})) + bn * det_bareiss(minor(d, {l}, {l})) +
         b1 * bn * det_bareiss(minor(d, {f, l}, {f, l}));
}

/// det(D_q(T)) with row v_n and column v_1 deleted.
inline Poly corner_minor_det(const WeightedTree& t) {
  const std::size_t n = t.order();
  return det_bareiss(minor(build_dq(t), {n - 1}, {0}));
}

}  // namespace qdist
