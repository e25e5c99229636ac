// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qdist/closedforms.hpp"
#include "qdist/exactdet.hpp"
#include "qdist/io.hpp"
#include "qdist/permlab.hpp"
#include "qdist/qmatrix.hpp"
#include "qdist/tree.hpp"
#include "test_support.hpp"

namespace {

using namespace qdist;

/// Collects the first few mismatches for a criterion.
class Checker {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) notes_ += "\n      " + what();
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::string& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string notes_;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Checker&)> body;
};

std::string show(const WeightedTree& t) { return tree_to_json(t).dump(); }

std::vector<WeightedTree> weighted_corpus() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> order(2, 8);
  std::vector<WeightedTree> trees;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = order(rng);
    trees.push_back(random_tree(n, 4, rng));
  }
  return trees;
}

std::vector<WeightedTree> unit_corpus(std::size_t max_n) {
  std::vector<WeightedTree> trees{from_edges(1, {})};
  for (std::size_t n = 2; n <= max_n; ++n)
    for (auto& t : enumerate_trees(n, 1)) trees.push_back(std::move(t));
  return trees;
}

BigInt signed_power(int base, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

BigInt graham_pollak_direct(std::size_t n) { return -BigInt(n - 1) * signed_power(-2, n - 2); }

/// (-1)^{n-1} 2^{n-2} prod(a) (2x + sum a), as a polynomial in x.
Poly bkn_direct(const std::vector<Weight>& ws) {
  const std::size_t n = ws.size() + 1;
  BigInt scale = (n % 2 == 0 ? -1 : 1) * signed_power(2, n - 2), sum = 0;
  for (Weight a : ws) {
    scale *= a;
    sum += a;
  }
  return Poly{scale * sum, scale * 2};
}

Poly one_minus_q2a_product(const std::vector<Weight>& ws) {
  Poly p(1);
  for (Weight a : ws) p *= Poly(1) - qpower(2 * static_cast<std::size_t>(a));
  return p;
}

void c1_graham_pollak(Checker& c) {
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t n = 2; n <= 6; ++n) {
    TreeEnumerator it(n, 1);
    while (auto t = it.next()) {
      ++seen[n];
      const Poly d = det_bareiss(build_d(*t));
      c.expect(d == Poly(graham_pollak_direct(n)), [&] { return show(*t) + " det=" + to_string(d); });
    }
  }
  c.expect(det_bareiss(build_d(from_edges(1, {}))).is_zero(), [] { return std::string("n=1"); });
  const std::map<std::size_t, std::size_t> counts{{2, 1}, {3, 3}, {4, 16}, {5, 125}, {6, 1296}};
  c.expect(seen == counts, [] { return std::string("wrong tree counts"); });
}

void c2_bkn(Checker& c) {
  for (const auto& t : weighted_corpus()) {
    const Poly d = det_bareiss(build_d_plus_xJ(t));
    const Poly want = bkn_direct(t.weights());
    c.expect(d == want, [&] { return show(t) + " det=" + to_string(d, 'x') + " want " + to_string(want, 'x'); });
    c.expect(d.coeff(0) == det_bareiss(build_d(t)).coeff(0), [&] { return show(t) + " constant term"; });
    c.expect(d == bkn_det_xj(WeightMultiset::of(t)), [&] { return show(t) + " library closed form"; });
  }
}

void c3_dq_star(Checker& c) {
  auto check = [&](const WeightedTree& t) {
    const Poly d = det_bareiss(build_dq_star(t));
    c.expect(d == one_minus_q2a_product(t.weights()), [&] { return show(t) + " det=" + to_string(d); });
  };
  for (const auto& t : weighted_corpus()) check(t);
  for (const auto& t : unit_corpus(6)) check(t);
}

void c4_dq(Checker& c) {
  for (const auto& t : weighted_corpus()) {
    const Poly d = det_bareiss(build_dq(t));
    c.expect(d == dq_closed(WeightMultiset::of(t)), [&] { return show(t) + " det=" + to_string(d); });
  }
  for (const auto& t : unit_corpus(6)) {
    const std::size_t n = t.order();
    if (n < 2) continue;
    const Poly d = det_bareiss(build_dq(t));
    const Poly want = Poly(n % 2 == 0 ? -BigInt(n - 1) : BigInt(n - 1)) * pow(Poly{1, 1}, n - 2);
    c.expect(d == want, [&] { return show(t) + " det=" + to_string(d); });
    c.expect(d == dq_closed(WeightMultiset::of(t)), [&] { return show(t) + " library closed form"; });
  }
}

void c5_structure(Checker& c) {
  std::set<std::string> distinct;
  std::size_t trees = 0;
  TreeEnumerator it(6, 1);
  while (auto t = it.next()) {
    ++trees;
    distinct.insert(to_string(det_bareiss(build_d(*t))) + " | " + to_string(det_bareiss(build_d_plus_xJ(*t)), 'x') +
                    " | " + to_string(det_bareiss(build_dq(*t))) + " | " + to_string(det_bareiss(build_dq_star(*t))));
  }
  c.expect(trees == 1296, [&] { return "visited " + std::to_string(trees); });
  c.expect(distinct.size() == 1, [&] { return std::to_string(distinct.size()) + " distinct determinant tuples"; });
}

void c6_dodgson(Checker& c) {
  std::mt19937_64 rng(606);
  for (int i = 0; i < 300; ++i) {
    const PolyMatrix m = testing::random_int_matrix(rng, 3 + i % 4, 9);
    c.expect(check_dodgson_identity(m), [&] { return matrix_to_json(m).dump(); });
  }
  for (int i = 0; i < 50; ++i) {
    const WeightedTree t = random_tree(5 + i % 2, 4, rng);
    c.expect(check_dodgson_identity(build_dq(t)), [&] { return show(t); });
  }
}

void c7_recurrence(Checker& c) {
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<std::size_t> order(4, 8);
  for (int i = 0; i < 100; ++i) {
    const WeightedTree t = with_pendants_at_ends(random_tree(order(rng), 4, rng));
    const Poly residual = pendant_recurrence_residual(t);
    c.expect(residual.is_zero(), [&] { return show(t) + " residual " + to_string(residual); });
    // Corner minor: delete row n and column 1, compare against [a1][a_{n-1}] prod [2 a_i].
    const std::size_t n = t.order();
    const Poly minor_det = det_bareiss(minor(build_dq(t), {n - 1}, {0}));
    const PendantSplit s = split_pendant_weights(t);
    Poly want = qbracket(static_cast<std::size_t>(s.first)) * qbracket(static_cast<std::size_t>(s.last));
    for (Weight a : s.rest) want *= qbracket(2 * static_cast<std::size_t>(a));
    c.expect(minor_det == want, [&] { return show(t) + " corner minor " + to_string(minor_det); });
    const Poly transposed = det_bareiss(minor(build_dq(t), {0}, {n - 1}));
    c.expect(transposed == minor_det, [&] { return show(t) + " corner minor asymmetry"; });
  }
}

/// Signed count of permutations by tree length, straight from the definition.
std::map<std::size_t, BigInt> n_table_by_definition(const WeightedTree& t) {
  const std::size_t n = t.order();
  const DistanceTable d = all_pairs_distances(t);
  std::vector<Vertex> im(n);
  std::iota(im.begin(), im.end(), Vertex{1});
  std::map<std::size_t, BigInt> table;
  do {
    const int sgn = sign(Permutation(im));
    Weight len = 0;
    for (Vertex i = 1; i <= n; ++i) len += d(i, im[i - 1]);
    table[static_cast<std::size_t>(len)] += sgn;
  } while (std::next_permutation(im.begin(), im.end()));
  std::erase_if(table, [](const auto& kv) { return kv.second == 0; });
  return table;
}

/// Closed form for the N-table of simple trees, written from scratch:
/// coefficient of q^k in (1 - q^2)^{n-1}.
std::map<std::size_t, BigInt> n_table_formula(std::size_t n) {
  const Poly p = pow(Poly(1) - qpower(2), n - 1);
  std::map<std::size_t, BigInt> m;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    if (p.coeff(k) != 0) m[k] = p.coeff(k);
  return m;
}

/// Coefficients of (-1)^{n-1}(n-1)(1+q)^{n-2}.
std::map<std::size_t, BigInt> m_table_formula(std::size_t n) {
  const Poly p = Poly(n % 2 == 0 ? -BigInt(n - 1) : BigInt(n - 1)) * pow(Poly{1, 1}, n - 2);
  std::map<std::size_t, BigInt> m;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    if (p.coeff(k) != 0) m[k] = p.coeff(k);
  return m;
}

std::vector<WeightedTree> large_unit_sample() {
  std::mt19937_64 rng(808);
  std::vector<WeightedTree> trees;
  for (std::size_t n : {7u, 8u})
    for (int i = 0; i < 20; ++i) trees.push_back(random_tree(n, 1, rng));
  return trees;
}

void c8_n_table(Checker& c) {
  auto check = [&](const WeightedTree& t) {
    const std::size_t n = t.order();
    const PermStats oracle = n_table_oracle(t);
    c.expect(oracle.same_values(n_table_closed(n)), [&] { return show(t) + " vs n_closed"; });
    c.expect(oracle.coeffs == n_table_formula(n), [&] { return show(t) + " vs (1-q^2)^(n-1)"; });
    bool per_k = true;
    for (std::size_t k = 0; k <= 2 * (n - 1) + 2; ++k) per_k = per_k && oracle.at(k) == n_closed(n, k);
    c.expect(per_k, [&] { return show(t) + " per-k mismatch"; });
  };
  for (const auto& t : unit_corpus(6))
    if (t.order() >= 2) check(t);
  for (const auto& t : large_unit_sample()) check(t);
  // The enumeration oracle against a definition-level count on a few trees.
  for (const auto& t : {path_tree(5, {1, 1, 1, 1}), star_tree(6, {1, 1, 1, 1, 1}), random_tree(6, 3, 81)})
    c.expect(n_table_oracle(t).coeffs == n_table_by_definition(t), [&] { return show(t) + " vs definition"; });
}

void c9_m_table(Checker& c) {
  auto check = [&](const WeightedTree& t) {
    const std::size_t n = t.order();
    const PermStats oracle = m_table_oracle(t);
    c.expect(oracle.same_values(m_table_closed(n)), [&] { return show(t) + " vs m_closed"; });
    c.expect(oracle.coeffs == m_table_formula(n), [&] { return show(t) + " vs (n-1)(1+q)^(n-2)"; });
  };
  for (const auto& t : unit_corpus(6))
    if (t.order() >= 2) check(t);
  for (const auto& t : large_unit_sample()) check(t);
  std::mt19937_64 rng(909);
  for (int i = 0; i < 30; ++i) {
    const WeightedTree t = random_tree(2 + i % 6, 4, rng);
    const PermStats oracle = m_table_oracle(t);
    const Poly d = det_bareiss(build_dq(t));
    c.expect(oracle.to_poly() == d, [&] { return show(t) + " M-table vs det(D_q) = " + to_string(d); });
  }
}

void c10_generating_functions(Checker& c) {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<std::size_t> order(2, 7);
  for (int i = 0; i < 30; ++i) {
    const WeightedTree t = random_tree(order(rng), 4, rng);
    const PermStats f = n_table_oracle(t), g = m_table_oracle(t);
    c.expect(f.to_poly() == det_bareiss(build_dq_star(t)), [&] { return show(t) + " F"; });
    c.expect(g.to_poly() == det_bareiss(build_dq(t)), [&] { return show(t) + " G"; });
    c.expect(generating_function_check(t).ok(), [&] { return show(t) + " library report"; });
  }
}

void c11_worked_case(Checker& c) {
  const WeightedTree star = star_tree(4, {1, 2, 3});
  const WeightedTree path = path_tree(4, {1, 2, 3});
  const Poly ds = det_bareiss(build_dq(star)), dp = det_bareiss(build_dq(path));
  const Poly want = dq_closed(WeightMultiset({1, 2, 3}));
  c.expect(ds == dp, [&] { return "star " + to_string(ds) + " path " + to_string(dp); });
  c.expect(ds == want, [&] { return "closed form " + to_string(want); });
  // Laplace expansion as a second opinion.
  c.expect(det_cofactor(build_dq(star)) == want, [] { return std::string("cofactor disagrees"); });
}

void c12_properties(Checker& c) {
  std::mt19937_64 rng(1212);
  for (int i = 0; i < 300; ++i) {
    const Poly a = testing::random_poly(rng), b = testing::random_poly(rng), e = testing::random_poly(rng);
    c.expect(a + b == b + a && a * b == b * a, [] { return std::string("commutativity"); });
    c.expect((a + b) + e == a + (b + e) && (a * b) * e == a * (b * e), [] { return std::string("associativity"); });
    c.expect(a * (b + e) == a * b + a * e, [] { return std::string("distributivity"); });
    c.expect(a + Poly() == a && a * Poly(1) == a && (a - a).is_zero(), [] { return std::string("identities"); });
    const Poly nz = testing::random_nonzero_poly(rng, 5);
    c.expect(exact_div(a * nz, nz) == a, [] { return std::string("exact division"); });
    const BigInt x = static_cast<long>(rng() % 7) - 3;
    c.expect((a * b).eval(x) == a.eval(x) * b.eval(x), [] { return std::string("evaluation homomorphism"); });
  }
  for (std::size_t alpha = 0; alpha < 40; ++alpha) {
    c.expect(qbracket(alpha + 1) == qbracket(alpha) + qpower(alpha), [] { return std::string("bracket recurrence"); });
    c.expect(qbracket(alpha).eval(1) == BigInt(alpha), [] { return std::string("bracket at one"); });
    c.expect(Poly{1, -1} * qbracket(alpha) == Poly(1) - qpower(alpha), [] { return std::string("bracket telescoping"); });
  }
  for (int i = 0; i < 300; ++i) {
    const PolyMatrix m = testing::random_int_matrix(rng, 1 + i % 6, 9);
    c.expect(det_bareiss(m) == det_cofactor(m), [&] { return "Bareiss vs cofactor " + matrix_to_json(m).dump(); });
  }
  for (int i = 0; i < 100; ++i) {
    const WeightedTree t = random_tree(2 + i % 7, 4, rng);
    const auto perm = testing::random_permutation(rng, t.order());
    std::vector<Vertex> label(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) label[j] = perm[j] + 1;
    const WeightedTree r = t.relabeled(label);
    c.expect(det_bareiss(build_dq(r)) == det_bareiss(build_dq(t)) &&
                 det_bareiss(build_dq_star(r)) == det_bareiss(build_dq_star(t)),
             [&] { return "relabeling " + show(t); });
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    std::set<std::set<std::pair<Vertex, Vertex>>> shapes;
    std::uint64_t count = 0;
    TreeEnumerator it(n, 1);
    while (auto t = it.next()) {
      ++count;
      std::set<std::pair<Vertex, Vertex>> s;
      for (const auto& e : t->edges()) s.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
      shapes.insert(s);
    }
    std::uint64_t cayley = 1;
    for (std::size_t i = 0; i + 2 < n; ++i) cayley *= n;
    c.expect(count == cayley && shapes.size() == cayley, [&] { return "Pruefer bijection n=" + std::to_string(n); });
  }
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 5;
    const WeightedTree t = random_tree(n, 3, rng);
    const DistanceTable d = all_pairs_distances(t);
    std::vector<Vertex> im(n);
    std::iota(im.begin(), im.end(), Vertex{1});
    std::shuffle(im.begin(), im.end(), rng);
    const Permutation p(im);
    const Poly gf = phi_count_poly(p, d);
    for (std::size_t k = 0; k < gf.coeffs().size() + 2; ++k)
      c.expect(BigInt(phi_count_direct(p, d, k)) == gf.coeff(k), [&] { return "phi oracles " + show(t); });
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Graham-Pollak determinant, all unit trees n<=6", 10, c1_graham_pollak},
      {2, "det(D+xJ) closed form, 200 weighted trees", 10, c2_bkn},
      {3, "det(D*_q) = prod(1-q^(2a)), weighted and unit corpora", 20, c3_dq_star},
      {4, "det(D_q) closed form, weighted and unit corpora", 30, c4_dq},
      {5, "structure independence at n=6", 20, c5_structure},
      {6, "Dodgson identity on integer and D_q matrices", 10, c6_dodgson},
      {7, "pendant recurrence and corner minor", 10, c7_recurrence},
      {8, "N-table equals closed form", 60, c8_n_table},
      {9, "M-table equals closed form and det(D_q)", 60, c9_m_table},
      {10, "generating functions F and G", 60, c10_generating_functions},
      {11, "worked case K_{1,3} vs P_4 with weights (1,2,3)", 1, c11_worked_case},
      {12, "property suites", 60, c12_properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && c.failures() == 0 && c.checks() > 0 && secs <= cr.limit_s;
    failed += ok ? 0 : 1;
    std::printf("[%s] %2d %s (%zu checks, %.2fs / %.0fs)\n", ok ? "PASS" : "FAIL", cr.id, cr.name, c.checks(), secs,
                cr.limit_s);
    if (!error.empty()) std::printf("      exception: %s\n", error.c_str());
    if (c.failures() > 0) std::printf("      %zu failures:%s\n", c.failures(), c.notes().c_str());
    if (secs > cr.limit_s) std::printf("      over time limit\n");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
