#pragma once

/*
 * Dense univariate polynomials over arbitrary-precision integers.
 *
 * Coefficients are stored little-endian by degree: coeffs()[i] is the
 * coefficient of the i-th power of the indeterminate. The representation is
 * canonical (no trailing zero coefficients; the zero polynomial is the empty
 * sequence), so equality is plain sequence equality.
 *
 * The same type houses q (for the q-distance matrices) and x (for the
 * rank-one perturbation D(T) + xJ); the variable name only matters when
 * printing.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qdist {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown by exact_div when the divisor does not divide the dividend. Inside
/// fraction-free elimination this means an algorithm bug, not bad input.
class NonDivisibleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Poly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr std::ptrdiff_t kMinusInfinity = std::numeric_limits<std::ptrdiff_t>::min();

  Poly() = default;

  template <typename Int>
    requires std::is_integral_v<Int>
  Poly(Int c) {  // NOLINT(google-explicit-constructor): constants embed into the ring
    if (c != 0) coeffs_.emplace_back(c);
  }

  Poly(const BigInt& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }

  Poly(std::initializer_list<BigInt> cs) : coeffs_(cs) { trim(); }

  explicit Poly(std::vector<BigInt> cs) : coeffs_(std::move(cs)) { trim(); }

  static Poly monomial(const BigInt& c, std::size_t degree) {
    if (c == 0) return {};
    std::vector<BigInt> cs(degree + 1);
    cs[degree] = c;
    return Poly(std::move(cs));
  }

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::ptrdiff_t degree() const noexcept {
    return coeffs_.empty() ? kMinusInfinity : static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
  }

  /// Coefficient of q^i; zero beyond the stored range.
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  const BigInt& leading() const { return coeffs_.back(); }

  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(out));
  }

  /// Quotient c with b * c == a. Throws NonDivisibleError otherwise.
  friend Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw NonDivisibleError("exact_div: division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.coeffs_.size() < b.coeffs_.size()) throw NonDivisibleError("exact_div: divisor degree exceeds dividend degree");

    std::vector<BigInt> rem = a.coeffs_;
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<BigInt> quot(rem.size() - db);
    const BigInt& lead = b.leading();
    BigInt q, r;
    for (std::size_t k = quot.size(); k-- > 0;) {
      const BigInt& top = rem[k + db];
      if (top == 0) continue;
      divide_qr(top, lead, q, r);
      if (r != 0) throw NonDivisibleError("exact_div: leading coefficient does not divide");
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
      quot[k] = std::move(q);
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& c) { return c != 0; }))
      throw NonDivisibleError("exact_div: nonzero remainder");
    return Poly(std::move(quot));
  }

  /// Horner evaluation.
  BigInt eval(const BigInt& t) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// Sum of i * coeff(i), i.e. the formal derivative evaluated at 1.
  BigInt derivative_at_one() const {
    BigInt acc = 0;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) acc += coeffs_[i] * i;
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

inline Poly add(const Poly& a, const Poly& b) { return a + b; }
inline Poly mul(const Poly& a, const Poly& b) { return a * b; }
inline BigInt eval_int(const Poly& a, const BigInt& t) { return a.eval(t); }
inline BigInt derivative_at_one(const Poly& a) { return a.derivative_at_one(); }

/// The q-bracket [alpha] = 1 + q + ... + q^(alpha-1); [0] is the zero polynomial.
inline Poly qbracket(std::size_t alpha) { return Poly(std::vector<BigInt>(alpha, BigInt(1))); }

/// The monomial q^alpha.
inline Poly qpower(std::size_t alpha) { return Poly::monomial(1, alpha); }

/// The indeterminate itself.
inline Poly indeterminate() { return qpower(1); }

inline Poly pow(Poly base, std::size_t e) {
  Poly acc = 1;
  while (e > 0) {
    if (e & 1U) acc *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return acc;
}

}  // namespace qdist
