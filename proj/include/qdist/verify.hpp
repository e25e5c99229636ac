#pragma once

/*
 * Identity sweep: runs every determinant/closed-form/permutation identity on
 * one tree at a time and tallies results by check name. Cross-tree checks
 * (structure independence) are tracked by StructureIndependence, keyed by the
 * sorted weight multiset.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qdist/closedforms.hpp"
#include "qdist/exactdet.hpp"
#include "qdist/io.hpp"
#include "qdist/permlab.hpp"
#include "qdist/qmatrix.hpp"
#include "qdist/tree.hpp"
#include "qdist/wiener.hpp"

namespace qdist {

/// The four determinants a tree gives rise to.
struct TreeDeterminants {
  Poly d;        // det D(T), constant
  Poly d_xj;     // det(D(T) + xJ), polynomial in x
  Poly dq;       // det D_q(T)
  Poly dq_star;  // det D*_q(T)

  friend bool operator==(const TreeDeterminants&, const TreeDeterminants&) = default;
};

inline TreeDeterminants compute_determinants(const WeightedTree& t) {
  return {det_bareiss(build_d(t)), det_bareiss(build_d_plus_xJ(t)), det_bareiss(build_dq(t)),
          det_bareiss(build_dq_star(t))};
}

struct CheckTally {
  std::uint64_t run = 0;
  std::uint64_t failed = 0;
  std::string first_failure;
};

class VerifyReport {
 public:
  void record(const std::string& check, bool ok, const std::function<std::string()>& detail) {
    CheckTally& t = tallies_[check];
    ++t.run;
    if (ok) return;
    ++t.failed;
    if (t.first_failure.empty()) t.first_failure = detail();
  }

  void count_tree() { ++trees_; }

  std::uint64_t trees() const noexcept { return trees_; }
  const std::map<std::string, CheckTally>& tallies() const noexcept { return tallies_; }

  std::uint64_t checks() const {
    std::uint64_t s = 0;
    for (const auto& [_, t] : tallies_) s += t.run;
    return s;
  }

  std::uint64_t failures() const {
    std::uint64_t s = 0;
    for (const auto& [_, t] : tallies_) s += t.failed;
    return s;
  }

 private:
  std::uint64_t trees_ = 0;
  std::map<std::string, CheckTally> tallies_;
};

struct VerifyOptions {
  /// Generating-function (permutation) checks run only up to this order.
  std::size_t generating_function_max_order = kMaxGeneratingFunctionOrder;
};

inline std::string describe(const WeightedTree& t) {
  std::string s = "n=" + std::to_string(t.order());
  for (const auto& e : t.edges()) s += " " + std::to_string(e.u) + "-" + std::to_string(e.v) + ":" + std::to_string(e.w);
  return s;
}

/// Remembers the determinants of the first tree seen for each weight
/// multiset and compares every later tree with it.
class StructureIndependence {
 public:
  void check(const WeightedTree& t, const TreeDeterminants& dets, VerifyReport& report) {
    std::vector<Weight> key = t.weights();
    std::sort(key.begin(), key.end());
    auto [it, inserted] = first_.try_emplace(std::move(key), dets, describe(t));
    if (inserted) return;
    report.record("structure_independence", it->second.first == dets,
                  [&] { return describe(t) + " differs from " + it->second.second; });
  }

 private:
  std::map<std::vector<Weight>, std::pair<TreeDeterminants, std::string>> first_;
};

namespace detail {

inline std::function<std::string()> mismatch(const WeightedTree& t, const Poly& got, const Poly& want, char var = 'q') {
  return [&t, got, want, var] { return describe(t) + ": got " + to_string(got, var) + ", expected " + to_string(want, var); };
}

}  // namespace detail

inline void verify_tree(const WeightedTree& t, VerifyReport& report, const VerifyOptions& opts = {},
                        StructureIndependence* structure = nullptr) {
  report.count_tree();
  const std::size_t n = t.order();
  const TreeDeterminants dets = compute_determinants(t);
  if (structure) structure->check(t, dets, report);
  if (n < 2) return;

  const WeightMultiset w = WeightMultiset::of(t);
  const Poly bkn = Poly(bkn_det(w));
  const Poly bkn_xj = bkn_det_xj(w);
  const Poly dq_formula = dq_closed(w);
  const Poly dq_star_formula = dq_star_closed(w);

  report.record("bkn_det", dets.d == bkn, detail::mismatch(t, dets.d, bkn));
  report.record("bkn_det_xj", dets.d_xj == bkn_xj, detail::mismatch(t, dets.d_xj, bkn_xj, 'x'));
  report.record("bkn_xj_constant_term", bkn_xj.coeff(0) == bkn_det(w), detail::mismatch(t, bkn_xj, bkn));
  report.record("dq_star_closed", dets.dq_star == dq_star_formula, detail::mismatch(t, dets.dq_star, dq_star_formula));
  report.record("dq_closed", dets.dq == dq_formula, detail::mismatch(t, dets.dq, dq_formula));
  report.record("dq_closed_at_one", dq_formula.eval(1) == bkn_det(w), detail::mismatch(t, Poly(dq_formula.eval(1)), bkn));

  if (t.is_simple()) {
    const Poly gp = Poly(graham_pollak(n));
    report.record("graham_pollak", dets.d == gp, detail::mismatch(t, dets.d, gp));
    report.record("dq_simple", dets.dq == dq_simple(n), detail::mismatch(t, dets.dq, dq_simple(n)));
    report.record("dq_star_simple", dets.dq_star == dq_star_simple(n), detail::mismatch(t, dets.dq_star, dq_star_simple(n)));
  }

  for (Vertex v : t.pendants()) {
    const auto col = pendant_column_residual(t, v);
    const Poly expected = Poly(1) - qpower(2 * static_cast<std::size_t>(pendant_weight(t, v)));
    bool ok = true;
    for (std::size_t r = 0; r < n; ++r) ok = ok && col[r] == (r + 1 == v ? expected : Poly());
    report.record("pendant_column_reduction", ok, [&t, v] { return describe(t) + ": pendant " + std::to_string(v); });
  }

  if (n >= 3) {
    const auto sides = dodgson_identity_sides(build_dq(t));
    report.record("dodgson_identity", sides.holds(), detail::mismatch(t, sides.lhs, sides.rhs));
    const PolyMatrix dq = build_dq(t);
    const Poly ne = det_bareiss(minor(dq, {0}, {n - 1})), sw = det_bareiss(minor(dq, {n - 1}, {0}));
    report.record("corner_minor_symmetry", ne == sw, detail::mismatch(t, ne, sw));
  }

  if (n >= 4) {
    const WeightedTree ends = with_pendants_at_ends(t);
    const Poly residual = pendant_recurrence_residual(ends);
    report.record("pendant_recurrence", residual.is_zero(), detail::mismatch(ends, residual, Poly()));
    const PendantSplit split = split_pendant_weights(ends);
    const Poly corner = corner_minor_det(ends);
    const Poly corner_formula = corner_minor_closed(split.first, split.last, split.rest);
    report.record("corner_minor", corner == corner_formula, detail::mismatch(ends, corner, corner_formula));
  }

  if (n <= opts.generating_function_max_order) {
    const GeneratingFunctionReport gf = generating_function_check(t);
    report.record("generating_function_F", gf.f_agrees(),
                  detail::mismatch(t, gf.n_oracle.to_poly(), gf.n_det.to_poly()));
    report.record("generating_function_G", gf.g_agrees(),
                  detail::mismatch(t, gf.m_oracle.to_poly(), gf.m_det.to_poly()));
    if (t.is_simple()) {
      const PermStats nc = n_table_closed(n), mc = m_table_closed(n);
      report.record("n_closed", gf.n_oracle.same_values(nc), detail::mismatch(t, gf.n_oracle.to_poly(), nc.to_poly()));
      report.record("m_closed", gf.m_oracle.same_values(mc), detail::mismatch(t, gf.m_oracle.to_poly(), mc.to_poly()));
    }
  }

  const BigInt w_index = wiener_index(t);
  const DistanceTable dist = all_pairs_distances(t);
  BigInt direct = 0;
  for (Vertex i = 1; i <= n; ++i)
    for (Vertex j = i + 1; j <= n; ++j) direct += dist(i, j);
  report.record("wiener_index", w_index == direct, [&t] { return describe(t); });
}

}  // namespace qdist
