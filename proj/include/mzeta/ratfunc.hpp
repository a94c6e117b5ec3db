#pragma once

#include "exact_arith.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mzeta {

/// c_1 X_1 + ... + c_n X_n + c_0 with integer coefficients, normalized so that the
/// coefficients are coprime and the first nonzero variable coefficient is positive.
class AffineForm {
 public:
  AffineForm() = default;

  /// Returns the normalized form and the factor q with original = q * form.
  static std::pair<AffineForm, Rational> make(const std::vector<Rational>& coeffs, const Rational& constant) {
    Integer den = 1;
    auto lcm = [](const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; };
    for (const auto& c : coeffs) den = lcm(den, boost::multiprecision::denominator(c));
    den = lcm(den, boost::multiprecision::denominator(constant));
    AffineForm f;
    for (const auto& c : coeffs) f.coeffs_.push_back(boost::multiprecision::numerator(Rational(c * den)));
    f.constant_ = boost::multiprecision::numerator(Rational(constant * den));
    Integer g = boost::multiprecision::abs(f.constant_);
    for (const auto& c : f.coeffs_) g = boost::multiprecision::gcd(g, c);
    if (g == 0) throw std::domain_error("AffineForm: zero form");
    auto lead = std::find_if(f.coeffs_.begin(), f.coeffs_.end(), [](const Integer& c) { return c != 0; });
    if (lead == f.coeffs_.end()) throw std::domain_error("AffineForm: constant form");
    if (*lead < 0) g = -g;
    for (auto& c : f.coeffs_) c /= g;
    f.constant_ /= g;
    while (!f.coeffs_.empty() && f.coeffs_.back() == 0) f.coeffs_.pop_back();
    return {f, Rational(g) / Rational(den)};
  }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  const Integer& constant() const { return constant_; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  std::size_t lead_variable() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return i;
    return coeffs_.size();
  }

  template <class V>
  V evaluate(const std::vector<V>& x) const {
    V acc = V(Rational(constant_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) acc = acc + V(Rational(coeffs_[i])) * x.at(i);
    return acc;
  }

  std::string str(const std::string& var = "X") const {
    std::string out;
    auto append = [&](const Integer& c, const std::string& name) {
      if (c == 0) return;
      Integer a = boost::multiprecision::abs(c);
      std::string body = name.empty() ? a.str() : (a == 1 ? name : a.str() + name);
      if (out.empty())
        out = (c < 0 ? "-" : "") + body;
      else
        out += (c < 0 ? " - " : " + ") + body;
    };
    for (std::size_t i = 0; i < coeffs_.size(); ++i) append(coeffs_[i], var + std::to_string(i + 1));
    append(constant_, "");
    return out;
  }

  auto operator<=>(const AffineForm& o) const {
    if (auto c = compare_vec(coeffs_, o.coeffs_); c != 0) return c <=> 0;
    return constant_.compare(o.constant_) <=> 0;
  }
  bool operator==(const AffineForm& o) const { return coeffs_ == o.coeffs_ && constant_ == o.constant_; }

 private:
  static int compare_vec(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      Integer x = i < a.size() ? a[i] : Integer(0), y = i < b.size() ? b[i] : Integer(0);
      if (x != y) return x < y ? -1 : 1;
    }
    return 0;
  }
  std::vector<Integer> coeffs_;
  Integer constant_ = 0;
};

/// Multivariate polynomial over Q in n variables.
class MPoly {
 public:
  using Exponents = std::vector<unsigned>;

  MPoly() = default;
  explicit MPoly(std::size_t n, const Rational& c = 0) : n_(n) {
    if (c != 0) terms_[Exponents(n, 0)] = c;
  }
  static MPoly variable(std::size_t n, std::size_t i) {
    MPoly p(n);
    Exponents e(n, 0);
    e.at(i) = 1;
    p.terms_[e] = 1;
    return p;
  }
  static MPoly from_form(std::size_t n, const AffineForm& f) {
    MPoly p(n, Rational(f.constant()));
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      if (f.coeffs()[i] == 0) continue;
      Exponents e(n, 0);
      e.at(i) = 1;
      p.terms_[e] += Rational(f.coeffs()[i]);
    }
    p.clean();
    return p;
  }

  std::size_t vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    r.n_ = std::max(n_, o.n_);
    for (const auto& [e, c] : o.terms_) r.terms_[e] += c;
    r.clean();
    return r;
  }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }
  MPoly operator*(const MPoly& o) const {
    MPoly r(std::max(n_, o.n_));
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponents e(std::max(e1.size(), e2.size()), 0);
        for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
        for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
        r.terms_[e] += c1 * c2;
      }
    r.clean();
    return r;
  }
  MPoly scaled(const Rational& q) const {
    if (q == 0) return MPoly(n_);
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c *= q;
    return r;
  }
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

  /// Exact quotient by an affine form, if it divides.
  std::optional<MPoly> divide(const AffineForm& f) const {
    std::size_t v = f.lead_variable();
    Rational lead(f.coeff(v));
    MPoly divisor = from_form(n_, f);
    // lex order with variable v most significant
    auto greater = [v](const Exponents& a, const Exponents& b) {
      if (a[v] != b[v]) return a[v] > b[v];
      return a > b;
    };
    MPoly rem = *this, quot(n_);
    while (!rem.is_zero()) {
      auto it = rem.terms_.begin();
      for (auto j = rem.terms_.begin(); j != rem.terms_.end(); ++j)
        if (greater(j->first, it->first)) it = j;
      if (it->first[v] == 0) return std::nullopt;
      Exponents e = it->first;
      e[v] -= 1;
      MPoly t(n_);
      t.terms_[e] = it->second / lead;
      quot = quot + t;
      rem = rem - t * divisor;
    }
    return quot;
  }

  template <class V>
  V evaluate(const std::vector<V>& x) const {
    V acc(0);
    for (const auto& [e, c] : terms_) {
      V t(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned p = 0; p < e[i]; ++p) t = t * x.at(i);
      acc = acc + t;
    }
    return acc;
  }

  /// Restriction to the line x = base + t * dir.
  Polynomial<Rational> on_line(const std::vector<Rational>& base, const std::vector<Rational>& dir) const {
    std::vector<Polynomial<Rational>> xs;
    for (std::size_t i = 0; i < n_; ++i) xs.push_back(Polynomial<Rational>({base.at(i), dir.at(i)}));
    Polynomial<Rational> acc;
    for (const auto& [e, c] : terms_) {
      Polynomial<Rational> t(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned p = 0; p < e[i]; ++p) t = t * xs[i];
      acc += t;
    }
    return acc;
  }

  std::string str(const std::string& var = "X") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      Rational a = boost::multiprecision::abs(c);
      std::string coeff = boost::multiprecision::denominator(a) == 1 ? boost::multiprecision::numerator(a).str()
                                                                     : to_string(a);
      std::string body = mono.empty() ? coeff : (a == 1 ? mono : coeff + "*" + mono);
      if (out.empty())
        out = (c < 0 ? "-" : "") + body;
      else
        out += (c < 0 ? " - " : " + ") + body;
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [e, c] : terms_) j.push_back({{"exp", e}, {"coeff", to_string(c)}});
    return j;
  }
  static MPoly from_json(std::size_t n, const nlohmann::json& j) {
    MPoly p(n);
    for (const auto& t : j) p.terms_[t.at("exp").get<Exponents>()] += parse_rational(t.at("coeff").get<std::string>());
    p.clean();
    return p;
  }

 private:
  void clean() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0)
        it = terms_.erase(it);
      else
        ++it;
    }
  }
  std::size_t n_ = 0;
  std::map<Exponents, Rational> terms_;
};

/// Univariate rational function in t with Laurent expansion at t = 0.
struct LineRestriction {
  Polynomial<Rational> num, den;

  /// Coefficients of t^m for m from the pole order up to max_order.
  std::map<int, Rational> laurent(int max_order) const {
    std::map<int, Rational> out;
    if (num.is_zero()) return out;
    int shift = 0;
    while (den[static_cast<std::size_t>(shift)] == 0) ++shift;
    std::vector<Rational> d(den.coefficients().begin() + shift, den.coefficients().end());
    int terms = max_order + shift + 1;
    if (terms <= 0) return out;
    // power series of num / d to `terms` coefficients
    std::vector<Rational> q(static_cast<std::size_t>(terms), Rational(0));
    for (int i = 0; i < terms; ++i) {
      Rational acc = num[static_cast<std::size_t>(i)];
      for (int j = 1; j <= i && j < static_cast<int>(d.size()); ++j) acc -= d[j] * q[static_cast<std::size_t>(i - j)];
      q[static_cast<std::size_t>(i)] = acc / d[0];
    }
    for (int i = 0; i < terms; ++i)
      if (q[static_cast<std::size_t>(i)] != 0) out[i - shift] = q[static_cast<std::size_t>(i)];
    return out;
  }
};

/// Exact rational function num / prod form^e over Q(X_1, ..., X_n).
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(std::size_t n, const Rational& c = 0) : n_(n), num_(n, c) {}

  static RatFunc variable(std::size_t n, std::size_t i) {
    RatFunc r(n);
    r.num_ = MPoly::variable(n, i);
    return r;
  }
  static RatFunc from_poly(const MPoly& p) {
    RatFunc r(p.vars());
    r.num_ = p;
    return r;
  }
  /// The affine form sum_i coeffs[i] X_{i+1} + constant.
  static RatFunc affine(std::size_t n, const std::vector<Rational>& coeffs, const Rational& constant) {
    RatFunc r(n);
    bool has_var = std::any_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c != 0; });
    if (!has_var) return RatFunc(n, constant);
    auto [f, q] = AffineForm::make(coeffs, constant);
    r.num_ = MPoly::from_form(n, f).scaled(q);
    return r;
  }
  /// 1 / (sum_i coeffs[i] X_{i+1} + constant).
  static RatFunc reciprocal(std::size_t n, const std::vector<Rational>& coeffs, const Rational& constant) {
    bool has_var = std::any_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c != 0; });
    if (!has_var) {
      if (constant == 0) throw std::domain_error("RatFunc: reciprocal of zero");
      return RatFunc(n, 1 / constant);
    }
    auto [f, q] = AffineForm::make(coeffs, constant);
    RatFunc r(n, 1 / q);
    r.den_[f] = 1;
    return r;
  }
  /// 1 / (X_from + ... + X_to), 1-based inclusive.
  static RatFunc reciprocal_sum(std::size_t n, std::size_t from, std::size_t to) {
    std::vector<Rational> c(n, Rational(0));
    for (std::size_t i = from; i <= to; ++i) c.at(i - 1) = 1;
    return reciprocal(n, c, 0);
  }

  std::size_t vars() const { return n_; }
  const MPoly& numerator() const { return num_; }
  const std::map<AffineForm, unsigned>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const {
    RatFunc r(std::max(n_, o.n_));
    std::map<AffineForm, unsigned> common = den_;
    for (const auto& [f, e] : o.den_) common[f] = std::max(common[f], e);
    r.num_ = lift(num_, den_, common) + lift(o.num_, o.den_, common);
    r.den_ = common;
    r.reduce();
    return r;
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -num_;
    return r;
  }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    RatFunc r(std::max(n_, o.n_));
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    for (const auto& [f, e] : o.den_) r.den_[f] += e;
    r.reduce();
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc scaled(const Rational& q) const {
    RatFunc r = *this;
    r.num_ = num_.scaled(q);
    if (q == 0) r.den_.clear();
    return r;
  }
  bool operator==(const RatFunc& o) const { return (*this - o).is_zero(); }

  /// Exact value; throws std::domain_error at a zero of the denominator.
  Rational evaluate(const std::vector<Rational>& x) const {
    Rational d = 1;
    for (const auto& [f, e] : den_) {
      Rational v = f.evaluate(x);
      if (v == 0) throw std::domain_error("RatFunc: evaluation at a pole");
      for (unsigned i = 0; i < e; ++i) d *= v;
    }
    return num_.evaluate(x) / d;
  }
  template <class V>
  V evaluate_numeric(const std::vector<V>& x) const {
    V d(1);
    for (const auto& [f, e] : den_) {
      V v = f.evaluate(x);
      for (unsigned i = 0; i < e; ++i) d = d * v;
    }
    return num_.evaluate(x) / d;
  }

  LineRestriction on_line(const std::vector<Rational>& base, const std::vector<Rational>& dir) const {
    LineRestriction l{num_.on_line(base, dir), Polynomial<Rational>(Rational(1))};
    for (const auto& [f, e] : den_) {
      Polynomial<Rational> p = MPoly::from_form(n_, f).on_line(base, dir);
      for (unsigned i = 0; i < e; ++i) l.den = l.den * p;
    }
    if (l.den.is_zero()) throw std::domain_error("RatFunc: line lies inside a polar hyperplane");
    return l;
  }

  std::string str(const std::string& var = "X") const {
    std::string out = num_.str(var);
    if (num_.terms().size() > 1) out = "(" + out + ")";
    if (den_.empty()) return out;
    out += "/(";
    bool first = true;
    for (const auto& [f, e] : den_) {
      if (!first) out += "*";
      first = false;
      std::string fs = f.str(var);
      bool atom = fs.find(' ') == std::string::npos;
      out += atom ? fs : "(" + fs + ")";
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out + ")";
  }

  nlohmann::json to_json() const {
    nlohmann::json den = nlohmann::json::array();
    for (const auto& [f, e] : den_) {
      std::vector<std::string> c;
      for (std::size_t i = 0; i < n_; ++i) c.push_back(to_string(Rational(f.coeff(i))));
      den.push_back({{"form", c}, {"constant", to_string(Rational(f.constant()))}, {"power", e}});
    }
    return {{"vars", n_}, {"num", num_.to_json()}, {"den", den}};
  }
  static RatFunc from_json(const nlohmann::json& j) {
    std::size_t n = j.at("vars").get<std::size_t>();
    RatFunc r = from_poly(MPoly::from_json(n, j.at("num")));
    r.n_ = n;
    for (const auto& d : j.at("den")) {
      std::vector<Rational> c;
      for (const auto& s : d.at("form")) c.push_back(parse_rational(s.get<std::string>()));
      RatFunc inv = reciprocal(n, c, parse_rational(d.at("constant").get<std::string>()));
      for (unsigned i = 0; i < d.at("power").get<unsigned>(); ++i) r = r * inv;
    }
    return r;
  }

 private:
  static MPoly lift(const MPoly& p, const std::map<AffineForm, unsigned>& have,
                    const std::map<AffineForm, unsigned>& want) {
    MPoly out = p;
    for (const auto& [f, e] : want) {
      auto it = have.find(f);
      unsigned missing = e - (it == have.end() ? 0 : it->second);
      for (unsigned i = 0; i < missing; ++i) out = out * MPoly::from_form(out.vars(), f);
    }
    return out;
  }
  void reduce() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      while (it->second > 0) {
        auto q = num_.divide(it->first);
        if (!q) break;
        num_ = *q;
        --it->second;
      }
      if (it->second == 0)
        it = den_.erase(it);
      else
        ++it;
    }
  }

  std::size_t n_ = 0;
  MPoly num_;
  std::map<AffineForm, unsigned> den_;
};

}  // namespace mzeta
