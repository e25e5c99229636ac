#pragma once

/*
 * Brute-force permutation statistics on a tree metric.
 *
 * For sigma in S_n the tree length is |sigma_T| = sum_i d(v_i, v_sigma(i)).
 * The N-table is the signed histogram of tree lengths; the M-table is the
 * signed sum of phi_{sigma,k}, the number of compositions x_1 + ... + x_n = k
 * with 0 <= x_i < d(v_i, v_sigma(i)). Their generating functions are the
 * Leibniz expansions of det(D*_q(T)) and det(D_q(T)), which is what
 * generating_function_check compares against elimination.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdist/exactdet.hpp"
#include "qdist/poly.hpp"
#include "qdist/qmatrix.hpp"
#include "qdist/tree.hpp"

namespace qdist {

inline constexpr std::size_t kMaxPermutationOrder = 9;

class Permutation {
 public:
  /// images[i] = sigma(i+1), values in 1..n.
  explicit Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
    std::vector<bool> hit(images_.size() + 1);
    for (Vertex v : images_) {
      if (v < 1 || v > images_.size() || hit[v]) throw std::invalid_argument("Permutation: not a bijection on 1..n");
      hit[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Vertex> im(n);
    std::iota(im.begin(), im.end(), Vertex{1});
    return Permutation(std::move(im));
  }

  std::size_t size() const noexcept { return images_.size(); }
  Vertex operator()(Vertex i) const { return images_[i - 1]; }
  const std::vector<Vertex>& images() const noexcept { return images_; }

  std::size_t cycle_count() const {
    std::vector<bool> seen(images_.size() + 1);
    std::size_t cycles = 0;
    for (Vertex s = 1; s <= images_.size(); ++s) {
      if (seen[s]) continue;
      ++cycles;
      for (Vertex v = s; !seen[v]; v = images_[v - 1]) seen[v] = true;
    }
    return cycles;
  }

 private:
  std::vector<Vertex> images_;
};

/// (-1)^(n - #cycles).
inline int sign(const Permutation& p) { return (p.size() - p.cycle_count()) % 2 == 0 ? 1 : -1; }

inline Weight length_on_tree(const Permutation& p, const DistanceTable& d) {
  if (p.size() != d.order()) throw std::invalid_argument("length_on_tree: size mismatch");
  Weight sum = 0;
  for (Vertex i = 1; i <= p.size(); ++i) sum += d(i, p(i));
  return sum;
}

/// Visits every permutation of 1..n in lexicographic order as fn(images, sign).
/// The sign is maintained incrementally: one lexicographic step is a swap
/// followed by reversing a suffix of length L, i.e. 1 + floor(L/2) transpositions.
template <typename Fn>
void for_each_permutation(std::size_t n, Fn&& fn) {
  std::vector<Vertex> a(n);
  std::iota(a.begin(), a.end(), Vertex{1});
  int sgn = 1;
  while (true) {
    fn(static_cast<const std::vector<Vertex>&>(a), sgn);
    if (n < 2) return;
    std::size_t i = n - 1;
    while (i > 0 && a[i - 1] >= a[i]) --i;
    if (i == 0) return;
    --i;
    std::size_t j = n - 1;
    while (a[j] <= a[i]) --j;
    std::swap(a[i], a[j]);
    const std::size_t suffix = n - 1 - i;
    std::reverse(a.begin() + static_cast<std::ptrdiff_t>(i + 1), a.end());
    if ((1 + suffix / 2) % 2 == 1) sgn = -sgn;
  }
}

// ---------------------------------------------------------------------------
// phi_{sigma,k}

/// Counts of bounded compositions for every k, by dynamic programming over
/// positions: ways[s] after position i counts (x_1..x_i) with sum s. Entry k
/// of the result is phi_{sigma,k}; the vector is empty when some bound is 0.
inline std::vector<std::int64_t> phi_counts(const std::vector<Vertex>& images, const DistanceTable& d) {
  std::vector<std::int64_t> ways{1};
  for (Vertex i = 1; i <= images.size(); ++i) {
    const auto bound = static_cast<std::size_t>(d(i, images[i - 1]));
    if (bound == 0) return {};
    std::vector<std::int64_t> next(ways.size() + bound - 1, 0);
    for (std::size_t s = 0; s < ways.size(); ++s) {
      if (ways[s] == 0) continue;
      for (std::size_t x = 0; x < bound; ++x)
        if (__builtin_add_overflow(next[s + x], ways[s], &next[s + x]))
          throw std::overflow_error("phi_counts: count exceeds 64 bits");
    }
    ways = std::move(next);
  }
  return ways;
}

inline std::int64_t phi_count_direct(const Permutation& p, const DistanceTable& d, std::size_t k) {
  if (p.size() != d.order()) throw std::invalid_argument("phi_count_direct: size mismatch");
  const auto ways = phi_counts(p.images(), d);
  return k < ways.size() ? ways[k] : 0;
}

/// prod_i [d(v_i, v_sigma(i))]; coefficient k equals phi_{sigma,k}.
inline Poly phi_count_poly(const Permutation& p, const DistanceTable& d) {
  if (p.size() != d.order()) throw std::invalid_argument("phi_count_poly: size mismatch");
  Poly acc = 1;
  for (Vertex i = 1; i <= p.size(); ++i) acc *= qbracket(static_cast<std::size_t>(d(i, p(i))));
  return acc;
}

// ---------------------------------------------------------------------------
// Tables

enum class StatKind { kN, kM };
enum class StatSource { kOracle, kDeterminant, kClosedForm };

inline const char* to_string(StatKind k) { return k == StatKind::kN ? "N" : "M"; }
inline const char* to_string(StatSource s) {
  switch (s) {
    case StatSource::kOracle: return "oracle";
    case StatSource::kDeterminant: return "determinant";
    case StatSource::kClosedForm: return "closed-form";
  }
  return "unknown";
}

/// Signed coefficients indexed by k. Only nonzero entries are stored.
struct PermStats {
  StatKind kind = StatKind::kN;
  std::size_t n = 0;
  std::map<std::size_t, BigInt> coeffs;
  StatSource source = StatSource::kOracle;

  BigInt at(std::size_t k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? BigInt(0) : it->second;
  }

  /// Largest k with a nonzero entry, or 0 for an empty table.
  std::size_t max_k() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

  Poly to_poly() const {
    std::vector<BigInt> cs(coeffs.empty() ? 0 : max_k() + 1);
    for (const auto& [k, v] : coeffs) cs[k] = v;
    return Poly(std::move(cs));
  }

  static PermStats from_poly(StatKind kind, std::size_t n, const Poly& p, StatSource source) {
    PermStats s{kind, n, {}, source};
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
      if (p.coeffs()[k] != 0) s.coeffs.emplace(k, p.coeffs()[k]);
    return s;
  }

  /// Same kind, order and coefficients; the source is provenance only.
  bool same_values(const PermStats& o) const { return kind == o.kind && n == o.n && coeffs == o.coeffs; }
};

namespace detail {

inline void require_enumerable(const WeightedTree& t) {
  if (t.order() > kMaxPermutationOrder)
    throw std::invalid_argument("permutation tables support n <= " + std::to_string(kMaxPermutationOrder) + ", got " +
                                std::to_string(t.order()));
}

inline PermStats table_from_counts(StatKind kind, std::size_t n, const std::vector<std::int64_t>& counts) {
  PermStats s{kind, n, {}, StatSource::kOracle};
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) s.coeffs.emplace(k, counts[k]);
  return s;
}

}  // namespace detail

/// N_{n,k}(T) over all n! permutations.
inline PermStats n_table_oracle(const WeightedTree& t) {
  detail::require_enumerable(t);
  const DistanceTable d = all_pairs_distances(t);
  const std::size_t n = t.order();
  std::vector<std::int64_t> hist;
  for_each_permutation(n, [&](const std::vector<Vertex>& im, int sgn) {
    std::size_t len = 0;
    for (Vertex i = 1; i <= n; ++i) len += static_cast<std::size_t>(d(i, im[i - 1]));
    if (len >= hist.size()) hist.resize(len + 1, 0);
    hist[len] += sgn;
  });
  return detail::table_from_counts(StatKind::kN, n, hist);
}

/// M_{n,k}(T) = sum_sigma sgn(sigma) phi_{sigma,k}(T).
inline PermStats m_table_oracle(const WeightedTree& t) {
  detail::require_enumerable(t);
  const DistanceTable d = all_pairs_distances(t);
  const std::size_t n = t.order();
  std::vector<std::int64_t> acc;
  for_each_permutation(n, [&](const std::vector<Vertex>& im, int sgn) {
    const auto ways = phi_counts(im, d);
    if (ways.size() > acc.size()) acc.resize(ways.size(), 0);
    for (std::size_t k = 0; k < ways.size(); ++k) {
      const std::int64_t term = sgn > 0 ? ways[k] : -ways[k];
      if (__builtin_add_overflow(acc[k], term, &acc[k])) throw std::overflow_error("m_table_oracle: overflow");
    }
  });
  return detail::table_from_counts(StatKind::kM, n, acc);
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Simple trees: 0 for odd k, (-1)^(k/2) C(n-1, k/2) for even k.
inline BigInt n_closed(std::size_t n, std::size_t k) {
  if (n < 2) throw std::invalid_argument("n_closed: n must be at least 2");
  if (k % 2 == 1) return 0;
  const BigInt b = binomial(n - 1, k / 2);
  return (k / 2) % 2 == 0 ? b : BigInt(-b);
}

/// Simple trees: (-1)^(n-1) (n-1) C(n-2, k).
inline BigInt m_closed(std::size_t n, std::size_t k) {
  if (n < 2) throw std::invalid_argument("m_closed: n must be at least 2");
  const BigInt v = BigInt(n - 1) * binomial(n - 2, k);
  return (n - 1) % 2 == 0 ? v : BigInt(-v);
}

inline PermStats n_table_closed(std::size_t n) {
  PermStats s{StatKind::kN, n, {}, StatSource::kClosedForm};
  for (std::size_t k = 0; k <= 2 * (n - 1); ++k)
    if (BigInt v = n_closed(n, k); v != 0) s.coeffs.emplace(k, v);
  return s;
}

inline PermStats m_table_closed(std::size_t n) {
  PermStats s{StatKind::kM, n, {}, StatSource::kClosedForm};
  for (std::size_t k = 0; k + 2 <= n; ++k)
    if (BigInt v = m_closed(n, k); v != 0) s.coeffs.emplace(k, v);
  return s;
}

struct GeneratingFunctionReport {
  PermStats n_oracle, n_det;  // F_n(q) vs det(D*_q(T))
  PermStats m_oracle, m_det;  // G_n(q) vs det(D_q(T))
  std::vector<std::size_t> n_mismatches, m_mismatches;  // k values that disagree

  bool f_agrees() const { return n_mismatches.empty(); }
  bool g_agrees() const { return m_mismatches.empty(); }
  bool ok() const { return f_agrees() && g_agrees(); }
};

inline constexpr std::size_t kMaxGeneratingFunctionOrder = 8;

inline GeneratingFunctionReport generating_function_check(const WeightedTree& t) {
  if (t.order() > kMaxGeneratingFunctionOrder)
    throw std::invalid_argument("generating_function_check supports n <= " + std::to_string(kMaxGeneratingFunctionOrder));
  GeneratingFunctionReport r;
  const std::size_t n = t.order();
  r.n_oracle = n_table_oracle(t);
  r.m_oracle = m_table_oracle(t);
  r.n_det = PermStats::from_poly(StatKind::kN, n, det_bareiss(build_dq_star(t)), StatSource::kDeterminant);
  r.m_det = PermStats::from_poly(StatKind::kM, n, det_bareiss(build_dq(t)), StatSource::kDeterminant);
  auto diff = [](const PermStats& a, const PermStats& b, std::vector<std::size_t>& out) {
    const std::size_t top = std::max(a.max_k(), b.max_k());
    for (std::size_t k = 0; k <= top; ++k)
      if (a.at(k) != b.at(k)) out.push_back(k);
  };
  diff(r.n_oracle, r.n_det, r.n_mismatches);
  diff(r.m_oracle, r.m_det, r.m_mismatches);
  return r;
}

}  // namespace qdist
