#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <initializer_list>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mzeta {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Always "p/q", including integers ("3/1").
inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

/// Accepts "p/q", "p" and leading sign.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace detail {

class BernoulliTable {
 public:
  static BernoulliTable& instance() {
    static BernoulliTable t;
    return t;
  }

  Rational get(unsigned n) {
    std::lock_guard<std::mutex> lock(mu_);
    while (values_.size() <= n) extend();
    return values_[n];
  }

 private:
  BernoulliTable() { values_.push_back(Rational(1)); }

  // sum_{j=0}^{n} C(n+1, j) B_j = 0
  void extend() {
    unsigned n = static_cast<unsigned>(values_.size());
    if (n >= 3 && n % 2 == 1) {
      values_.push_back(Rational(0));
      return;
    }
    Rational acc = 0;
    Integer c = 1;  // C(n+1, j)
    for (unsigned j = 0; j < n; ++j) {
      acc += Rational(c) * values_[j];
      c = c * (n + 1 - j) / (j + 1);
    }
    values_.push_back(-acc / Rational(n + 1));
  }

  std::mutex mu_;
  std::vector<Rational> values_;
};

class StirlingTable {
 public:
  static StirlingTable& instance() {
    static StirlingTable t;
    return t;
  }

  Integer get(unsigned n, unsigned k) {
    std::lock_guard<std::mutex> lock(mu_);
    while (rows_.size() <= n) extend();
    return rows_[n][k];
  }

 private:
  StirlingTable() { rows_.push_back({Integer(1)}); }

  // s(n+1,k) = s(n,k-1) - n s(n,k)
  void extend() {
    unsigned n = static_cast<unsigned>(rows_.size()) - 1;
    const auto& prev = rows_.back();
    std::vector<Integer> row(n + 2, 0);
    for (unsigned k = 0; k <= n + 1; ++k) {
      Integer v = 0;
      if (k >= 1) v += prev[k - 1];
      if (k <= n) v -= Integer(n) * prev[k];
      row[k] = v;
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mu_;
  std::vector<std::vector<Integer>> rows_;
};

}  // namespace detail

/// B_n with B_1 = -1/2; the star variant is (-1)^n B_n.
inline Rational bernoulli(unsigned n, bool star = false) {
  Rational b = detail::BernoulliTable::instance().get(n);
  if (star && n % 2 == 1) b = -b;
  return b;
}

/// Signed Stirling numbers of the first kind.
inline Integer stirling_first(unsigned n, unsigned k) {
  if (k > n) throw std::out_of_range("stirling_first: k > n");
  return detail::StirlingTable::instance().get(n, k);
}

/// Dense univariate polynomial, coefficient i multiplies x^i.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }
  Polynomial(const T& constant) : c_{constant} { trim(); }  // NOLINT

  static Polynomial monomial(const T& coeff, std::size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coefficients() const { return c_; }
  T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> c(std::max(c_.size(), o.c_.size()), T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Polynomial(std::move(c));
  }
  Polynomial operator-() const {
    std::vector<T> c = c_;
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<T> c(c_.size() + o.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  template <class V>
  V evaluate(const V& x) const {
    V acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

/// (s)_k as a polynomial in s for k >= 0, or the marker 1/(s-1) for k = -1.
class PochhammerPoly {
 public:
  explicit PochhammerPoly(int k) : k_(k) {
    if (k < -1) throw std::invalid_argument("pochhammer: order below -1");
    Polynomial<Rational> p(Rational(1));
    for (int j = 0; j < k; ++j) p *= Polynomial<Rational>({Rational(j), Rational(1)});
    if (k >= 0) poly_ = p;
  }

  int order() const { return k_; }
  bool is_reciprocal() const { return k_ == -1; }
  /// Meaningless for the reciprocal marker.
  const Polynomial<Rational>& polynomial() const { return poly_; }

  template <class V>
  V evaluate(const V& s) const {
    if (k_ == -1) return V(1) / (s - V(1));
    return poly_.evaluate(s);
  }

 private:
  int k_;
  Polynomial<Rational> poly_;
};

inline PochhammerPoly pochhammer(int k) { return PochhammerPoly(k); }

/// Numeric (x)_k for k >= -1 without building the polynomial.
template <class V>
V pochhammer_value(const V& x, int k) {
  if (k < -1) throw std::invalid_argument("pochhammer: order below -1");
  if (k == -1) return V(1) / (x - V(1));
  V acc(1);
  for (int j = 0; j < k; ++j) acc = acc * (x + V(j));
  return acc;
}

}  // namespace mzeta
