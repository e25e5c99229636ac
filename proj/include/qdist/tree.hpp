#pragma once

/*
 * Weighted labeled trees.
 *
 * Vertices carry the labels 1..n and label order is meaningful: several
 * identities single out v_1 and v_n, so every construction below preserves the
 * labels it is given. Edge weights are positive integers.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdist {

using Vertex = std::size_t;  // 1-based label
using Weight = std::int64_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class TreeErrc {
  kNoVertices,
  kWrongEdgeCount,
  kLabelOutOfRange,
  kSelfLoop,
  kNonPositiveWeight,
  kDuplicateEdge,
  kCycle,
  kBadPruferLength,
  kBadPruferLabel,
  kWeightCountMismatch,
  kUnsupportedSize,
};

inline const char* to_string(TreeErrc e) {
  switch (e) {
    case TreeErrc::kNoVertices: return "no vertices";
    case TreeErrc::kWrongEdgeCount: return "wrong edge count";
    case TreeErrc::kLabelOutOfRange: return "vertex label out of range";
    case TreeErrc::kSelfLoop: return "self-loop";
    case TreeErrc::kNonPositiveWeight: return "non-positive weight";
    case TreeErrc::kDuplicateEdge: return "duplicate edge";
    case TreeErrc::kCycle: return "cycle (graph is disconnected)";
    case TreeErrc::kBadPruferLength: return "bad Pruefer sequence length";
    case TreeErrc::kBadPruferLabel: return "Pruefer label out of range";
    case TreeErrc::kWeightCountMismatch: return "weight count mismatch";
    case TreeErrc::kUnsupportedSize: return "unsupported size";
  }
  return "unknown tree error";
}

class TreeError : public std::invalid_argument {
 public:
  TreeError(TreeErrc code, const std::string& detail)
      : std::invalid_argument(std::string(to_string(code)) + ": " + detail), code_(code) {}

  TreeErrc code() const noexcept { return code_; }

 private:
  TreeErrc code_;
};

class WeightedTree {
 public:
  /// Validates and builds a tree on vertices 1..n. Connectivity follows from
  /// n-1 edges plus acyclicity, so a disconnected input surfaces as kCycle.
  static WeightedTree from_edges(std::size_t n, std::vector<Edge> edges) {
    if (n == 0) throw TreeError(TreeErrc::kNoVertices, "n must be at least 1");
    if (edges.size() != n - 1)
      throw TreeError(TreeErrc::kWrongEdgeCount,
                      "expected " + std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));

    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& e : edges) {
      const std::string where = "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
      if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) throw TreeError(TreeErrc::kLabelOutOfRange, where);
      if (e.u == e.v) throw TreeError(TreeErrc::kSelfLoop, where);
      if (e.w < 1) throw TreeError(TreeErrc::kNonPositiveWeight, where + " weight " + std::to_string(e.w));
      if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) throw TreeError(TreeErrc::kDuplicateEdge, where);
    }

    std::vector<Vertex> parent(n + 1);
    for (Vertex v = 0; v <= n; ++v) parent[v] = v;
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& e : edges) {
      const Vertex a = find(e.u), b = find(e.v);
      if (a == b) throw TreeError(TreeErrc::kCycle, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") closes a cycle");
      parent[a] = b;
    }
    return WeightedTree(n, std::move(edges));
  }

  std::size_t order() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edge weights in edge order.
  std::vector<Weight> weights() const {
    std::vector<Weight> ws;
    ws.reserve(edges_.size());
    for (const auto& e : edges_) ws.push_back(e.w);
    return ws;
  }

  bool is_simple() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1; });
  }

  /// (neighbor, weight) pairs of v.
  const std::vector<std::pair<Vertex, Weight>>& neighbors(Vertex v) const { return adj_.at(v); }

  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  bool is_pendant(Vertex v) const { return degree(v) == 1; }

  std::vector<Vertex> pendants() const {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= n_; ++v)
      if (is_pendant(v)) out.push_back(v);
    return out;
  }

  /// new_label[v-1] is the label vertex v receives. Must be a permutation of 1..n.
  WeightedTree relabeled(const std::vector<Vertex>& new_label) const {
    if (new_label.size() != n_) throw std::invalid_argument("relabeled: permutation size mismatch");
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (const auto& e : edges_) es.push_back({new_label[e.u - 1], new_label[e.v - 1], e.w});
    return from_edges(n_, std::move(es));
  }

  /// The tree with pendant vertex v deleted; labels above v shift down by one.
  WeightedTree without_pendant(Vertex v) const {
    if (!is_pendant(v)) throw std::invalid_argument("without_pendant: vertex " + std::to_string(v) + " is not pendant");
    std::vector<Edge> es;
    auto shift = [v](Vertex x) { return x > v ? x - 1 : x; };
    for (const auto& e : edges_)
      if (e.u != v && e.v != v) es.push_back({shift(e.u), shift(e.v), e.w});
    return from_edges(n_ - 1, std::move(es));
  }

  friend bool operator==(const WeightedTree& a, const WeightedTree& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  WeightedTree(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n + 1) {
    for (const auto& e : edges_) {
      adj_[e.u].emplace_back(e.v, e.w);
      adj_[e.v].emplace_back(e.u, e.w);
    }
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<Vertex, Weight>>> adj_;
};

inline WeightedTree from_edges(std::size_t n, std::vector<Edge> edges) {
  return WeightedTree::from_edges(n, std::move(edges));
}

/// Standard Pruefer decoding: repeatedly join the smallest current leaf to the
/// next sequence entry, then join the last two remaining vertices. The i-th
/// weight goes to the i-th edge produced.
inline WeightedTree prufer_decode(const std::vector<Vertex>& seq, std::size_t n, const std::vector<Weight>& weights) {
  if (n < 2) throw TreeError(TreeErrc::kUnsupportedSize, "Pruefer decoding needs n >= 2");
  if (seq.size() != n - 2)
    throw TreeError(TreeErrc::kBadPruferLength, "expected length " + std::to_string(n - 2) + ", got " + std::to_string(seq.size()));
  if (weights.size() != n - 1)
    throw TreeError(TreeErrc::kWeightCountMismatch, "expected " + std::to_string(n - 1) + " weights, got " + std::to_string(weights.size()));

  std::vector<std::size_t> deg(n + 1, 1);
  for (Vertex a : seq) {
    if (a < 1 || a > n) throw TreeError(TreeErrc::kBadPruferLabel, std::to_string(a));
    ++deg[a];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 1; v <= n; ++v)
    if (deg[v] == 1) leaves.push(v);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Vertex a : seq) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.push_back({leaf, a, weights[edges.size()]});
    if (--deg[a] == 1) leaves.push(a);
  }
  const Vertex u = leaves.top();
  leaves.pop();
  const Vertex v = leaves.top();
  edges.push_back({u, v, weights[edges.size()]});
  return from_edges(n, std::move(edges));
}

inline constexpr std::size_t kMaxEnumerationOrder = 8;

/// Streams all n^(n-2) labeled trees on n vertices (uniform edge weight) by
/// counting through Pruefer sequences in lexicographic order.
class TreeEnumerator {
 public:
  TreeEnumerator(std::size_t n, Weight weight) : n_(n), weight_(weight) {
    if (n < 2 || n > kMaxEnumerationOrder)
      throw TreeError(TreeErrc::kUnsupportedSize, "enumeration supports 2 <= n <= " + std::to_string(kMaxEnumerationOrder));
    if (weight < 1) throw TreeError(TreeErrc::kNonPositiveWeight, std::to_string(weight));
    seq_.assign(n - 2, 1);
  }

  std::uint64_t count() const {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i + 2 < n_; ++i) c *= n_;
    return c;
  }

  std::optional<WeightedTree> next() {
    if (done_) return std::nullopt;
    WeightedTree t = prufer_decode(seq_, n_, std::vector<Weight>(n_ - 1, weight_));
    advance();
    return t;
  }

 private:
  void advance() {
    for (std::size_t i = seq_.size(); i-- > 0;) {
      if (seq_[i] < n_) {
        ++seq_[i];
        return;
      }
      seq_[i] = 1;
    }
    done_ = true;
  }

  std::size_t n_;
  Weight weight_;
  std::vector<Vertex> seq_;
  bool done_ = false;
};

/// Collects every labeled tree on n vertices; intended for small n.
inline std::vector<WeightedTree> enumerate_trees(std::size_t n, Weight weight) {
  TreeEnumerator it(n, weight);
  std::vector<WeightedTree> out;
  out.reserve(it.count());
  while (auto t = it.next()) out.push_back(std::move(*t));
  return out;
}

/// Uniform labeled tree (uniform Pruefer sequence) with independent uniform
/// weights in [1, max_weight]. Deterministic in the engine state.
template <typename Engine>
WeightedTree random_tree(std::size_t n, Weight max_weight, Engine& rng) {
  if (n < 2) throw TreeError(TreeErrc::kUnsupportedSize, "random trees need n >= 2");
  if (max_weight < 1) throw TreeError(TreeErrc::kNonPositiveWeight, "max weight " + std::to_string(max_weight));
  std::uniform_int_distribution<Vertex> label(1, n);
  std::uniform_int_distribution<Weight> weight(1, max_weight);
  std::vector<Vertex> seq(n - 2);
  for (auto& a : seq) a = label(rng);
  std::vector<Weight> ws(n - 1);
  for (auto& w : ws) w = weight(rng);
  return prufer_decode(seq, n, ws);
}

inline WeightedTree random_tree(std::size_t n, Weight max_weight, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_tree(n, max_weight, rng);
}

/// The path v_1 - v_2 - ... - v_n; weights[i] sits on edge (v_{i+1}, v_{i+2}).
inline WeightedTree path_tree(std::size_t n, const std::vector<Weight>& weights) {
  if (n < 1) throw TreeError(TreeErrc::kNoVertices, "n must be at least 1");
  if (weights.size() != n - 1)
    throw TreeError(TreeErrc::kWeightCountMismatch, "expected " + std::to_string(n - 1) + " weights");
  std::vector<Edge> es;
  for (Vertex i = 1; i < n; ++i) es.push_back({i, i + 1, weights[i - 1]});
  return from_edges(n, std::move(es));
}

/// Star with center v_n and pendants v_1..v_{n-1}; weights[i] sits on (v_{i+1}, v_n).
inline WeightedTree star_tree(std::size_t n, const std::vector<Weight>& weights) {
  if (n < 1) throw TreeError(TreeErrc::kNoVertices, "n must be at least 1");
  if (weights.size() != n - 1)
    throw TreeError(TreeErrc::kWeightCountMismatch, "expected " + std::to_string(n - 1) + " weights");
  std::vector<Edge> es;
  for (Vertex i = 1; i < n; ++i) es.push_back({i, n, weights[i - 1]});
  return from_edges(n, std::move(es));
}

/// Relabels t so that two of its pendant vertices become v_1 and v_n. The
/// lowest-labelled pendant goes to 1 and the highest to n; the remaining
/// vertices keep their relative order.
inline WeightedTree with_pendants_at_ends(const WeightedTree& t) {
  const std::size_t n = t.order();
  if (n < 2) return t;
  const auto leaves = t.pendants();
  const Vertex first = leaves.front(), last = leaves.back();
  std::vector<Vertex> label(n);
  label[first - 1] = 1;
  label[last - 1] = n;
  Vertex next = 2;
  for (Vertex v = 1; v <= n; ++v)
    if (v != first && v != last) label[v - 1] = next++;
  return t.relabeled(label);
}

/// Symmetric table of exact tree distances, 1-based.
class DistanceTable {
 public:
  explicit DistanceTable(std::size_t n) : n_(n), dist_(n * n, 0) {}

  std::size_t order() const noexcept { return n_; }

  Weight operator()(Vertex i, Vertex j) const { return dist_[(i - 1) * n_ + (j - 1)]; }
  Weight& operator()(Vertex i, Vertex j) { return dist_[(i - 1) * n_ + (j - 1)]; }

 private:
  std::size_t n_;
  std::vector<Weight> dist_;
};

/// One traversal per source vertex.
inline DistanceTable all_pairs_distances(const WeightedTree& t) {
  const std::size_t n = t.order();
  DistanceTable d(n);
  std::vector<Vertex> stack;
  std::vector<bool> seen(n + 1);
  for (Vertex s = 1; s <= n; ++s) {
    std::fill(seen.begin(), seen.end(), false);
    seen[s] = true;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : t.neighbors(u)) {
        if (seen[v]) continue;
        seen[v] = true;
        d(s, v) = d(s, u) + w;
        stack.push_back(v);
      }
    }
  }
  return d;
}

}  // namespace qdist
