#pragma once

/*
 * Command implementations behind the qdist executable. Argument parsing lives
 * in tools/qdist.cpp; everything here takes a RunConfig and writes to the
 * given streams so it can be driven from tests.
 *
 * Exit status: 0 all checks pass, 1 an identity failed, 2 input/usage error.
 */

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdist/closedforms.hpp"
#include "qdist/exactdet.hpp"
#include "qdist/io.hpp"
#include "qdist/permlab.hpp"
#include "qdist/tree.hpp"
#include "qdist/verify.hpp"
#include "qdist/wiener.hpp"

namespace qdist::cli {

enum ExitCode : int { kOk = 0, kIdentityFailure = 1, kUsage = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { kDet, kVerify, kPermTable, kWiener, kGenTree, kEnumerate };
enum class OutputFormat { kPlain, kJson, kCsv };

inline constexpr std::size_t kDefaultExhaustiveCap = 7;

struct TreeSource {
  enum class Kind { kNone, kFile, kPrufer, kRandom, kPath, kStar, kExhaustive };
  Kind kind = Kind::kNone;
  std::string file;
  std::vector<Vertex> prufer;
  std::size_t n = 0;  // vertex count for random/path/star/exhaustive
  std::optional<std::size_t> n_min, n_max;  // random sweeps with varying n
  Weight max_weight = 1;
  std::uint64_t seed = 0;
  std::vector<Weight> weights;  // empty means unit weights
};

struct RunConfig {
  Command command = Command::kDet;
  TreeSource source;
  std::optional<std::size_t> k_max;
  OutputFormat output = OutputFormat::kPlain;
  std::size_t trials = 1;
  bool allow_large = false;  // lifts the exhaustive cap to 8
};

// ---------------------------------------------------------------------------
// Tree sources

namespace detail {

inline std::vector<Weight> weights_or_unit(const TreeSource& s, std::size_t n) {
  if (s.weights.empty()) return std::vector<Weight>(n - 1, 1);
  if (s.weights.size() != n - 1)
    throw UsageError("--weights: expected " + std::to_string(n - 1) + " values, got " + std::to_string(s.weights.size()));
  return s.weights;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open tree file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Weight uniform_weight(const TreeSource& s) {
  if (s.weights.empty()) return 1;
  if (s.weights.size() != 1) throw UsageError("--exhaustive takes a single uniform weight in --weights");
  return s.weights.front();
}

inline std::size_t exhaustive_cap(const RunConfig& cfg) {
  return cfg.allow_large ? kMaxEnumerationOrder : kDefaultExhaustiveCap;
}

}  // namespace detail

/// The single tree named by a non-sweeping source.
inline WeightedTree resolve_tree(const TreeSource& s) {
  using Kind = TreeSource::Kind;
  switch (s.kind) {
    case Kind::kFile: return parse_tree(detail::read_file(s.file));
    case Kind::kPrufer: {
      const std::size_t n = s.prufer.size() + 2;
      return prufer_decode(s.prufer, n, detail::weights_or_unit(s, n));
    }
    case Kind::kRandom: {
      if (s.n < 2) throw UsageError("--random needs n >= 2");
      return random_tree(s.n, s.max_weight, s.seed);
    }
    case Kind::kPath:
      if (s.n < 1) throw UsageError("--path needs n >= 1");
      return path_tree(s.n, detail::weights_or_unit(s, s.n));
    case Kind::kStar:
      if (s.n < 1) throw UsageError("--star needs n >= 1");
      return star_tree(s.n, detail::weights_or_unit(s, s.n));
    case Kind::kExhaustive: throw UsageError("--exhaustive is only valid for verify and enumerate");
    case Kind::kNone: break;
  }
  throw UsageError("no tree source given");
}

/// Feeds every tree of the configured sweep to fn, in a deterministic order.
template <typename Fn>
void for_each_sweep_tree(const RunConfig& cfg, std::ostream& err, Fn&& fn) {
  const TreeSource& s = cfg.source;
  using Kind = TreeSource::Kind;
  if (s.kind == Kind::kExhaustive) {
    if (s.n < 2 || s.n > detail::exhaustive_cap(cfg))
      throw UsageError("--exhaustive supports 2 <= n <= " + std::to_string(detail::exhaustive_cap(cfg)) +
                       (cfg.allow_large ? "" : " (use --allow-large for 8)"));
    if (s.n == kMaxEnumerationOrder) err << "warning: exhaustive n=8 visits 16777216 trees\n";
    TreeEnumerator it(s.n, detail::uniform_weight(s));
    while (auto t = it.next()) fn(*t);
    return;
  }
  if (s.kind == Kind::kRandom) {
    if (cfg.trials == 0) throw UsageError("--trials must be at least 1 for random sweeps");
    const std::size_t lo = s.n_min.value_or(s.n_max ? 2 : s.n), hi = s.n_max.value_or(s.n);
    if (lo < 2 || hi < lo) throw UsageError("random sweep needs 2 <= n-min <= n-max");
    if (s.max_weight < 1) throw UsageError("--max-weight must be positive");
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<std::size_t> order(lo, hi);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const std::size_t n = order(rng);
      fn(random_tree(n, s.max_weight, rng));
    }
    return;
  }
  fn(resolve_tree(s));
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline void require_format(const RunConfig& cfg, bool csv_ok) {
  if (cfg.output == OutputFormat::kCsv && !csv_ok) throw UsageError("--output csv is not supported by this command");
}

inline std::string edge_list(const WeightedTree& t) {
  std::string s;
  for (const auto& e : t.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(e.u) + "-" + std::to_string(e.v) + ":" + std::to_string(e.w);
  }
  return s;
}

}  // namespace detail

inline int cmd_det(const RunConfig& cfg, std::ostream& out) {
  detail::require_format(cfg, false);
  const WeightedTree t = resolve_tree(cfg.source);
  const TreeDeterminants dets = compute_determinants(t);

  struct Row {
    const char* name;
    const Poly& det;
    Poly closed;
    char var;
  };
  std::vector<Row> rows;
  if (t.order() >= 2) {
    const WeightMultiset w = WeightMultiset::of(t);
    rows.push_back({"D", dets.d, Poly(bkn_det(w)), 'q'});
    rows.push_back({"D+xJ", dets.d_xj, bkn_det_xj(w), 'x'});
    rows.push_back({"D*_q", dets.dq_star, dq_star_closed(w), 'q'});
    rows.push_back({"D_q", dets.dq, dq_closed(w), 'q'});
  }
  bool all_pass = true;
  for (const auto& r : rows) all_pass = all_pass && r.det == r.closed;

  if (cfg.output == OutputFormat::kJson) {
    Json dj = Json::object();
    for (const auto& r : rows)
      dj[r.name] = {{"det", to_string(r.det, r.var)},
                    {"det_coeffs", poly_to_json(r.det)},
                    {"closed", to_string(r.closed, r.var)},
                    {"pass", r.det == r.closed}};
    out << Json{{"command", "det"}, {"tree", tree_to_json(t)}, {"determinants", dj}, {"pass", all_pass}}.dump(2) << '\n';
  } else {
    out << "tree: n=" << t.order() << (t.order() > 1 ? " edges: " + detail::edge_list(t) : "") << '\n';
    for (const auto& r : rows) {
      out << "det(" << r.name << ") = " << to_string(r.det, r.var) << '\n';
      out << "  closed form = " << to_string(r.closed, r.var) << '\n';
      out << "  " << (r.det == r.closed ? "PASS" : "FAIL") << '\n';
    }
    if (rows.empty()) out << "single vertex: all four matrices are 1x1\n";
    out << (all_pass ? "PASS" : "FAIL") << '\n';
  }
  return all_pass ? kOk : kIdentityFailure;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::require_format(cfg, false);
  VerifyReport report;
  StructureIndependence structure;
  for_each_sweep_tree(cfg, err, [&](const WeightedTree& t) { verify_tree(t, report, {}, &structure); });

  if (cfg.output == OutputFormat::kJson) {
    Json checks = Json::object();
    for (const auto& [name, tally] : report.tallies()) {
      Json c{{"run", tally.run}, {"failed", tally.failed}};
      if (!tally.first_failure.empty()) c["first_failure"] = tally.first_failure;
      checks[name] = c;
    }
    out << Json{{"command", "verify"},
                {"trees", report.trees()},
                {"checks_run", report.checks()},
                {"failures", report.failures()},
                {"checks", checks}}
               .dump(2)
        << '\n';
  } else {
    out << "trees: " << report.trees() << '\n';
    for (const auto& [name, tally] : report.tallies()) {
      out << std::left << std::setw(28) << name << " run=" << tally.run << " failed=" << tally.failed << '\n';
      if (!tally.first_failure.empty()) out << "  first failure: " << tally.first_failure << '\n';
    }
    out << "checks: " << report.checks() << " failures: " << report.failures() << '\n';
  }
  return report.failures() == 0 ? kOk : kIdentityFailure;
}

inline int cmd_perm_table(const RunConfig& cfg, std::ostream& out) {
  const WeightedTree t = resolve_tree(cfg.source);
  const std::size_t n = t.order();
  if (n > kMaxPermutationOrder) throw UsageError("perm-table supports n <= " + std::to_string(kMaxPermutationOrder));
  if (n < 2) throw UsageError("perm-table needs n >= 2");

  const PermStats n_or = n_table_oracle(t), m_or = m_table_oracle(t);
  const PermStats n_det = PermStats::from_poly(StatKind::kN, n, det_bareiss(build_dq_star(t)), StatSource::kDeterminant);
  const PermStats m_det = PermStats::from_poly(StatKind::kM, n, det_bareiss(build_dq(t)), StatSource::kDeterminant);
  const bool simple = t.is_simple();
  const std::optional<PermStats> n_cl = simple ? std::optional(n_table_closed(n)) : std::nullopt;
  const std::optional<PermStats> m_cl = simple ? std::optional(m_table_closed(n)) : std::nullopt;

  const bool n_det_ok = n_or.same_values(n_det), m_det_ok = m_or.same_values(m_det);
  const bool n_cl_ok = !n_cl || n_or.same_values(*n_cl), m_cl_ok = !m_cl || m_or.same_values(*m_cl);
  const bool all_ok = n_det_ok && m_det_ok && n_cl_ok && m_cl_ok;
  const std::size_t k_top = cfg.k_max.value_or(std::max(n_or.max_k(), std::max(m_or.max_k(), n_det.max_k())));

  const std::string na = "n/a (weighted)";
  auto cell = [&](const std::optional<PermStats>& s, std::size_t k) { return s ? s->at(k).str() : na; };

  switch (cfg.output) {
    case OutputFormat::kJson: {
      Json tables = Json::array({stats_to_json(n_or), stats_to_json(n_det), stats_to_json(m_or), stats_to_json(m_det)});
      if (n_cl) tables.push_back(stats_to_json(*n_cl));
      if (m_cl) tables.push_back(stats_to_json(*m_cl));
      Json agree{{"N_oracle_vs_determinant", n_det_ok}, {"M_oracle_vs_determinant", m_det_ok}};
      agree["N_oracle_vs_closed"] = n_cl ? Json(n_cl_ok) : Json("n/a (weighted)");
      agree["M_oracle_vs_closed"] = m_cl ? Json(m_cl_ok) : Json("n/a (weighted)");
      out << Json{{"command", "perm-table"}, {"tree", tree_to_json(t)}, {"tables", tables}, {"agree", agree}, {"pass", all_ok}}
                 .dump(2)
          << '\n';
      break;
    }
    case OutputFormat::kCsv:
      out << "k,N_oracle,N_determinant,N_closed,M_oracle,M_determinant,M_closed\n";
      for (std::size_t k = 0; k <= k_top; ++k)
        out << k << ',' << n_or.at(k) << ',' << n_det.at(k) << ',' << cell(n_cl, k) << ',' << m_or.at(k) << ','
            << m_det.at(k) << ',' << cell(m_cl, k) << '\n';
      break;
    case OutputFormat::kPlain:
      out << "tree: n=" << n << " edges: " << detail::edge_list(t) << '\n';
      out << std::left << std::setw(4) << "k" << std::setw(12) << "N_oracle" << std::setw(12) << "N_det" << std::setw(16)
          << "N_closed" << std::setw(12) << "M_oracle" << std::setw(12) << "M_det" << "M_closed" << '\n';
      for (std::size_t k = 0; k <= k_top; ++k)
        out << std::left << std::setw(4) << k << std::setw(12) << n_or.at(k) << std::setw(12) << n_det.at(k)
            << std::setw(16) << cell(n_cl, k) << std::setw(12) << m_or.at(k) << std::setw(12) << m_det.at(k)
            << cell(m_cl, k) << '\n';
      out << "N oracle = det(D*_q): " << (n_det_ok ? "PASS" : "FAIL") << '\n';
      out << "M oracle = det(D_q): " << (m_det_ok ? "PASS" : "FAIL") << '\n';
      out << "N oracle = closed form: " << (n_cl ? (n_cl_ok ? "PASS" : "FAIL") : na) << '\n';
      out << "M oracle = closed form: " << (m_cl ? (m_cl_ok ? "PASS" : "FAIL") : na) << '\n';
      break;
  }
  return all_ok ? kOk : kIdentityFailure;
}

inline int cmd_wiener(const RunConfig& cfg, std::ostream& out) {
  detail::require_format(cfg, false);
  const WeightedTree t = resolve_tree(cfg.source);
  const Poly w = wiener_poly(t);
  const BigInt index = wiener_index(t);
  if (cfg.output == OutputFormat::kJson) {
    out << Json{{"command", "wiener"}, {"tree", tree_to_json(t)}, {"wiener_poly", to_string(w)},
                {"wiener_poly_coeffs", poly_to_json(w)}, {"wiener_index", index.str()}}
               .dump(2)
        << '\n';
  } else {
    out << "W(T,q) = " << to_string(w) << '\n';
    out << "Wiener index = " << index << '\n';
  }
  return kOk;
}

inline int cmd_gen_tree(const RunConfig& cfg, std::ostream& out) {
  detail::require_format(cfg, false);
  const WeightedTree t = resolve_tree(cfg.source);
  if (cfg.output == OutputFormat::kJson)
    out << tree_to_json(t).dump() << '\n';
  else
    out << tree_to_text(t);
  return kOk;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::require_format(cfg, false);
  if (cfg.source.kind != TreeSource::Kind::kExhaustive) throw UsageError("enumerate requires --exhaustive N");
  if (cfg.output == OutputFormat::kJson) {
    Json trees = Json::array();
    for_each_sweep_tree(cfg, err, [&](const WeightedTree& t) { trees.push_back(tree_to_json(t)); });
    out << Json{{"command", "enumerate"}, {"n", cfg.source.n}, {"count", trees.size()}, {"trees", trees}}.dump() << '\n';
  } else {
    std::uint64_t count = 0;
    for_each_sweep_tree(cfg, err, [&](const WeightedTree& t) {
      out << detail::edge_list(t) << '\n';
      ++count;
    });
    out << "# " << count << " trees\n";
  }
  return kOk;
}

/// Validates cross-option invariants and dispatches. Library exceptions from
/// bad input are mapped to kUsage.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const bool sweep = cfg.command == Command::kVerify || cfg.command == Command::kEnumerate;
    if (cfg.source.kind == TreeSource::Kind::kNone) throw UsageError("exactly one tree source is required");
    if (cfg.source.kind == TreeSource::Kind::kExhaustive && !sweep)
      throw UsageError("--exhaustive is only valid for verify and enumerate");
    if (cfg.source.kind != TreeSource::Kind::kRandom && (cfg.source.n_min || cfg.source.n_max))
      throw UsageError("--n-min/--n-max apply only to random sweeps");
    switch (cfg.command) {
      case Command::kDet: return cmd_det(cfg, out);
      case Command::kVerify: return cmd_verify(cfg, out, err);
      case Command::kPermTable: return cmd_perm_table(cfg, out);
      case Command::kWiener: return cmd_wiener(cfg, out);
      case Command::kGenTree: return cmd_gen_tree(cfg, out);
      case Command::kEnumerate: return cmd_enumerate(cfg, out, err);
    }
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const TreeError& e) {
    err << "invalid tree: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace qdist::cli
