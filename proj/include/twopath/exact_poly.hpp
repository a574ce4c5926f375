#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twopath/scalar.hpp"

namespace twopath {

/// Dense univariate polynomial in s, coefficients in ascending powers.
/// The zero polynomial has no coefficients and degree -1.
template <typename Scalar>
class UniPoly {
 public:
  UniPoly() = default;

  explicit UniPoly(std::vector<Scalar> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static UniPoly constant(const Scalar& c) { return UniPoly(std::vector<Scalar>{c}); }

  static UniPoly monomial(const Scalar& c, int power) {
    std::vector<Scalar> v(power + 1, Scalar(0));
    v[power] = c;
    return UniPoly(std::move(v));
  }

  /// s - root
  static UniPoly linear_factor(const Scalar& root) {
    return UniPoly(std::vector<Scalar>{Scalar(-root), Scalar(1)});
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  Scalar coeff(int power) const {
    return power >= 0 && power <= degree() ? coeffs_[power] : Scalar(0);
  }

  Scalar operator()(const Scalar& s) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  Scalar max_abs_coefficient() const {
    Scalar best(0);
    for (const auto& c : coeffs_) best = std::max(best, abs_value(c));
    return best;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
  }

  friend UniPoly operator*(const Scalar& k, const UniPoly& p) { return UniPoly::constant(k) * p; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, highest power first, e.g. "s^2 - 6*s + 8".
  std::string to_string(const std::string& var = "s") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int p = degree(); p >= 0; --p) {
      const Scalar& c = coeffs_[p];
      if (c == 0) continue;
      Scalar mag = abs_value(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (p == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << var;
      if (p > 1) os << "^" << p;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

template <typename Scalar>
using PolyMatrix2 = std::array<std::array<UniPoly<Scalar>, 2>, 2>;

template <typename Scalar>
UniPoly<Scalar> det2x2(const PolyMatrix2<Scalar>& m) {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

/// Polynomial in indeterminates z_i truncated at total degree 2. Only nonzero
/// coefficients are stored; quadratic keys are ordered pairs (i <= j).
template <typename Scalar>
class TruncPoly2 {
 public:
  using Pair = std::pair<int, int>;

  TruncPoly2() = default;

  static TruncPoly2 constant(const Scalar& c) {
    TruncPoly2 p;
    p.constant_ = c;
    return p;
  }

  static TruncPoly2 variable(int i, const Scalar& c = Scalar(1)) {
    TruncPoly2 p;
    p.add_linear(i, c);
    return p;
  }

  static TruncPoly2 product_term(int i, int j, const Scalar& c = Scalar(1)) {
    TruncPoly2 p;
    p.add_quadratic(i, j, c);
    return p;
  }

  const Scalar& constant_term() const { return constant_; }
  const std::map<int, Scalar>& linear() const { return linear_; }
  const std::map<Pair, Scalar>& quadratic() const { return quadratic_; }

  Scalar linear_coeff(int i) const {
    auto it = linear_.find(i);
    return it == linear_.end() ? Scalar(0) : it->second;
  }

  Scalar quadratic_coeff(int i, int j) const {
    auto it = quadratic_.find(ordered(i, j));
    return it == quadratic_.end() ? Scalar(0) : it->second;
  }

  bool is_zero() const { return constant_ == 0 && linear_.empty() && quadratic_.empty(); }

  TruncPoly2 constant_part() const { return constant(constant_); }
  TruncPoly2 linear_part() const {
    TruncPoly2 p;
    p.linear_ = linear_;
    return p;
  }
  TruncPoly2 quadratic_part() const {
    TruncPoly2 p;
    p.quadratic_ = quadratic_;
    return p;
  }

  void add_linear(int i, const Scalar& c) { accumulate(linear_, i, c); }
  void add_quadratic(int i, int j, const Scalar& c) { accumulate(quadratic_, ordered(i, j), c); }

  TruncPoly2& operator+=(const TruncPoly2& o) {
    constant_ += o.constant_;
    for (const auto& [k, c] : o.linear_) accumulate(linear_, k, c);
    for (const auto& [k, c] : o.quadratic_) accumulate(quadratic_, k, c);
    return *this;
  }

  TruncPoly2& operator-=(const TruncPoly2& o) {
    constant_ -= o.constant_;
    for (const auto& [k, c] : o.linear_) accumulate(linear_, k, Scalar(-c));
    for (const auto& [k, c] : o.quadratic_) accumulate(quadratic_, k, Scalar(-c));
    return *this;
  }

  friend TruncPoly2 operator+(TruncPoly2 a, const TruncPoly2& b) { return a += b; }
  friend TruncPoly2 operator-(TruncPoly2 a, const TruncPoly2& b) { return a -= b; }
  friend bool operator==(const TruncPoly2& a, const TruncPoly2& b) {
    return a.constant_ == b.constant_ && a.linear_ == b.linear_ && a.quadratic_ == b.quadratic_;
  }

  std::string to_string(const std::string& var = "z") const {
    std::vector<std::pair<std::string, Scalar>> terms;
    for (const auto& [k, c] : quadratic_) {
      std::string mono = k.first == k.second
                             ? var + std::to_string(k.first) + "^2"
                             : var + std::to_string(k.first) + "*" + var + std::to_string(k.second);
      terms.emplace_back(mono, c);
    }
    for (const auto& [k, c] : linear_) terms.emplace_back(var + std::to_string(k), c);
    if (constant_ != 0) terms.emplace_back("", constant_);
    if (terms.empty()) return "0";
    std::ostringstream os;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto& [mono, c] = terms[t];
      Scalar mag = abs_value(c);
      if (t == 0) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (mono.empty()) {
        os << mag;
      } else {
        if (mag != 1) os << mag << "*";
        os << mono;
      }
    }
    return os.str();
  }

 private:
  static Pair ordered(int i, int j) { return i <= j ? Pair{i, j} : Pair{j, i}; }

  template <typename Key>
  static void accumulate(std::map<Key, Scalar>& m, const Key& k, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = m.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) m.erase(it);
  }

  Scalar constant_{0};
  std::map<int, Scalar> linear_;
  std::map<Pair, Scalar> quadratic_;
};

/// Product with every term of total degree >= 3 discarded.
template <typename Scalar>
TruncPoly2<Scalar> trunc2_mul(const TruncPoly2<Scalar>& a, const TruncPoly2<Scalar>& b) {
  TruncPoly2<Scalar> out = TruncPoly2<Scalar>::constant(a.constant_term() * b.constant_term());
  const Scalar& ca = a.constant_term();
  const Scalar& cb = b.constant_term();
  if (cb != 0) {
    for (const auto& [i, c] : a.linear()) out.add_linear(i, c * cb);
    for (const auto& [k, c] : a.quadratic()) out.add_quadratic(k.first, k.second, c * cb);
  }
  if (ca != 0) {
    for (const auto& [i, c] : b.linear()) out.add_linear(i, ca * c);
    for (const auto& [k, c] : b.quadratic()) out.add_quadratic(k.first, k.second, ca * c);
  }
  for (const auto& [i, c1] : a.linear())
    for (const auto& [j, c2] : b.linear()) out.add_quadratic(i, j, c1 * c2);
  return out;
}

}  // namespace twopath
