#pragma once

/*
 * Text and JSON forms.
 *
 *   Poly          "c0 + c1*q + c2*q^2 + ..." (zero terms omitted, unit
 *                 coefficients on powers omitted, zero prints "0"), or a JSON
 *                 array of decimal coefficient strings, lowest degree first.
 *   WeightedTree  text: "n" then n-1 lines "u v w"; JSON {"n":..,"edges":[[u,v,w],..]}.
 *   PolyMatrix    JSON n x n array of polynomial strings.
 *   PermStats     JSON {"kind","n","coeffs":{"k":value},"source"} or CSV rows "k,value".
 */

#include <cctype>
#include <cstdint>
#include <cstddef>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdist/permlab.hpp"
#include "qdist/poly.hpp"
#include "qdist/qmatrix.hpp"
#include "qdist/tree.hpp"

namespace qdist {

using Json = nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Poly

inline std::string to_string(const Poly& p, char var = 'q') {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const BigInt& c = p.coeffs()[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    const BigInt mag = neg ? BigInt(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (i == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

/// Inverse of to_string. Accepts any whitespace and terms in any order;
/// repeated powers are summed.
inline Poly parse_poly(std::string_view text, char var = 'q') {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("parse_poly: " + what + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
  };
  auto read_digits = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  };

  std::vector<BigInt> cs;
  skip_ws();
  if (pos == text.size()) throw fail("empty input");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
      neg = text[pos] == '-';
      ++pos;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;

    BigInt coeff = 1;
    bool have_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = BigInt(read_digits());
      have_coeff = true;
      skip_ws();
    }
    std::size_t power = 0;
    bool have_var = false;
    if (have_coeff && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip_ws();
      if (pos == text.size() || text[pos] != var) throw fail(std::string("expected '") + var + "' after '*'");
    }
    if (pos < text.size() && text[pos] == var) {
      ++pos;
      have_var = true;
      power = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        const std::string e = read_digits();
        if (e.empty()) throw fail("expected exponent");
        power = std::stoull(e);
        skip_ws();
      }
    }
    if (!have_coeff && !have_var) throw fail("expected a term");
    if (power >= cs.size()) cs.resize(power + 1);
    cs[power] += neg ? BigInt(-coeff) : coeff;
  }
  return Poly(std::move(cs));
}

inline Json poly_to_json(const Poly& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.str());
  return arr;
}

inline Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("poly_from_json: expected an array");
  std::vector<BigInt> cs;
  for (const auto& e : j) {
    if (e.is_string())
      cs.emplace_back(e.get<std::string>());
    else if (e.is_number_integer())
      cs.emplace_back(e.get<std::int64_t>());
    else
      throw ParseError("poly_from_json: coefficients must be decimal strings");
  }
  return Poly(std::move(cs));
}

// ---------------------------------------------------------------------------
// WeightedTree

inline std::string tree_to_text(const WeightedTree& t) {
  std::ostringstream os;
  os << t.order() << '\n';
  for (const auto& e : t.edges()) os << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return os.str();
}

/// Reads the text tree format; validation errors surface as TreeError.
inline WeightedTree tree_from_text(std::istream& in) {
  long long n = 0;
  if (!(in >> n)) throw ParseError("tree file: missing vertex count");
  if (n < 1) throw TreeError(TreeErrc::kNoVertices, "n = " + std::to_string(n));
  std::vector<Edge> edges;
  long long u = 0, v = 0, w = 0;
  while (in >> u >> v >> w) {
    if (u < 1 || v < 1) throw TreeError(TreeErrc::kLabelOutOfRange, "(" + std::to_string(u) + "," + std::to_string(v) + ")");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Weight>(w)});
  }
  if (!in.eof()) throw ParseError("tree file: malformed edge line after " + std::to_string(edges.size()) + " edges");
  return from_edges(static_cast<std::size_t>(n), std::move(edges));
}

inline WeightedTree tree_from_text(const std::string& text) {
  std::istringstream is(text);
  return tree_from_text(is);
}

inline Json tree_to_json(const WeightedTree& t) {
  Json edges = Json::array();
  for (const auto& e : t.edges()) edges.push_back({e.u, e.v, e.w});
  return Json{{"n", t.order()}, {"edges", edges}};
}

inline WeightedTree tree_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<long long>();
    if (n < 1) throw TreeError(TreeErrc::kNoVertices, "n = " + std::to_string(n));
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("tree json: each edge must be [u, v, w]");
      const auto u = e[0].get<long long>(), v = e[1].get<long long>();
      if (u < 1 || v < 1) throw TreeError(TreeErrc::kLabelOutOfRange, "(" + std::to_string(u) + "," + std::to_string(v) + ")");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), e[2].get<Weight>()});
    }
    return from_edges(static_cast<std::size_t>(n), std::move(edges));
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("tree json: ") + ex.what());
  }
}

/// Dispatches on the first non-blank character: '{' means JSON.
inline WeightedTree parse_tree(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& ex) {
      throw ParseError(std::string("tree json: ") + ex.what());
    }
    return tree_from_json(j);
  }
  return tree_from_text(text);
}

// ---------------------------------------------------------------------------
// PolyMatrix

inline Json matrix_to_json(const PolyMatrix& m, char var = 'q') {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.order(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.order(); ++j) row.push_back(to_string(m(i, j), var));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline PolyMatrix matrix_from_json(const Json& j, char var = 'q') {
  if (!j.is_array()) throw ParseError("matrix json: expected an array of rows");
  PolyMatrix m(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) throw ParseError("matrix json: matrix is not square");
    for (std::size_t c = 0; c < j.size(); ++c) m(i, c) = parse_poly(j[i][c].get<std::string>(), var);
  }
  return m;
}

// ---------------------------------------------------------------------------
// PermStats

inline Json stats_to_json(const PermStats& s) {
  Json coeffs = Json::object();
  for (const auto& [k, v] : s.coeffs) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
      coeffs[std::to_string(k)] = v.convert_to<std::int64_t>();
    else
      coeffs[std::to_string(k)] = v.str();
  }
  return Json{{"kind", to_string(s.kind)}, {"n", s.n}, {"coeffs", coeffs}, {"source", to_string(s.source)}};
}

inline PermStats stats_from_json(const Json& j) {
  try {
    PermStats s;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "N")
      s.kind = StatKind::kN;
    else if (kind == "M")
      s.kind = StatKind::kM;
    else
      throw ParseError("stats json: unknown kind " + kind);
    s.n = j.at("n").get<std::size_t>();
    const auto src = j.at("source").get<std::string>();
    if (src == "oracle")
      s.source = StatSource::kOracle;
    else if (src == "determinant")
      s.source = StatSource::kDeterminant;
    else if (src == "closed-form")
      s.source = StatSource::kClosedForm;
    else
      throw ParseError("stats json: unknown source " + src);
    for (const auto& [k, v] : j.at("coeffs").items()) {
      BigInt value = v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<std::int64_t>());
      if (value != 0) s.coeffs.emplace(std::stoull(k), std::move(value));
    }
    return s;
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("stats json: ") + ex.what());
  }
}

/// One "k,value" row per k in [0, k_max].
inline std::string stats_to_csv(const PermStats& s, std::size_t k_max) {
  std::string out = "k,value\n";
  for (std::size_t k = 0; k <= k_max; ++k) out += std::to_string(k) + "," + s.at(k).str() + "\n";
  return out;
}

}  // namespace qdist
