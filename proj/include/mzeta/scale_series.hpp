#pragma once

#include "exact_arith.hpp"
#include "multiprecision.hpp"

#include "json.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mzeta {

class UnresolvedConstant : public std::runtime_error {
 public:
  explicit UnresolvedConstant(const std::string& name)
      : std::runtime_error("unresolved constant " + name) {}
};

namespace detail {

class AtomTable {
 public:
  static AtomTable& instance() {
    static AtomTable t;
    return t;
  }
  int id(const std::string& name) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }
  std::string name(int id) {
    std::lock_guard<std::mutex> lock(mu_);
    return names_.at(static_cast<std::size_t>(id));
  }

 private:
  std::mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace detail

/// Element of Q[atoms]: a rational plus rational multiples of monomials in named constants.
class Coeff {
 public:
  using Monomial = std::vector<int>;  // sorted atom ids, non-empty

  Coeff() = default;
  Coeff(const Rational& q) : rational_(q) {}  // NOLINT
  Coeff(int q) : rational_(q) {}              // NOLINT

  static Coeff atom(const std::string& name) {
    Coeff c;
    c.terms_[{detail::AtomTable::instance().id(name)}] = 1;
    return c;
  }

  bool is_zero() const { return rational_ == 0 && terms_.empty(); }
  bool is_rational() const { return terms_.empty(); }
  const Rational& rational_part() const { return rational_; }
  const std::map<Monomial, Rational>& atom_terms() const { return terms_; }

  Rational rational_value() const {
    if (!terms_.empty()) throw UnresolvedConstant(atom_names().front());
    return rational_;
  }

  std::vector<std::string> atom_names() const {
    std::set<std::string> names;
    for (const auto& [mono, c] : terms_)
      for (int id : mono) names.insert(detail::AtomTable::instance().name(id));
    return {names.begin(), names.end()};
  }

  Coeff operator+(const Coeff& o) const {
    Coeff r = *this;
    r += o;
    return r;
  }
  Coeff& operator+=(const Coeff& o) {
    rational_ += o.rational_;
    for (const auto& [mono, c] : o.terms_) {
      auto it = terms_.find(mono);
      if (it == terms_.end()) {
        terms_.emplace(mono, c);
      } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  Coeff operator-() const {
    Coeff r = *this;
    r.rational_ = -r.rational_;
    for (auto& [mono, c] : r.terms_) c = -c;
    return r;
  }
  Coeff operator-(const Coeff& o) const { return *this + (-o); }
  Coeff operator*(const Coeff& o) const {
    if (is_rational() && o.is_rational()) return Coeff(rational_ * o.rational_);
    if (o.is_rational()) return scaled(o.rational_);
    if (is_rational()) return o.scaled(rational_);
    Coeff r(rational_ * o.rational_);
    auto add = [&r](Monomial m, const Rational& c) {
      if (c == 0) return;
      std::sort(m.begin(), m.end());
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        r.terms_.emplace(std::move(m), c);
      } else {
        it->second += c;
        if (it->second == 0) r.terms_.erase(it);
      }
    };
    for (const auto& [m, c] : terms_) add(m, c * o.rational_);
    for (const auto& [m, c] : o.terms_) add(m, c * rational_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) {
        Monomial m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        add(std::move(m), c1 * c2);
      }
    return r;
  }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
  bool operator==(const Coeff& o) const { return rational_ == o.rational_ && terms_ == o.terms_; }

  Coeff scaled(const Rational& q) const {
    if (q == 0) return Coeff();
    Coeff r = *this;
    r.rational_ *= q;
    for (auto& [m, c] : r.terms_) c *= q;
    return r;
  }

  /// Evaluates with atoms mapped to numbers by `resolve`.
  MFloat evaluate(const std::function<MFloat(const std::string&)>& resolve) const {
    MFloat acc = to_mfloat(rational_);
    if (terms_.empty()) return acc;
    std::map<int, MFloat> cache;
    for (const auto& [mono, c] : terms_) {
      MFloat p = to_mfloat(c);
      for (int id : mono) {
        auto it = cache.find(id);
        if (it == cache.end())
          it = cache.emplace(id, resolve(detail::AtomTable::instance().name(id))).first;
        p *= it->second;
      }
      acc += p;
    }
    return acc;
  }

  /// "p/q", "p/q*name", terms joined by " + ", ordered by atom names.
  std::string str() const {
    std::vector<std::pair<std::string, Rational>> parts;
    for (const auto& [mono, c] : terms_) {
      std::vector<std::string> names;
      for (int id : mono) names.push_back(detail::AtomTable::instance().name(id));
      std::sort(names.begin(), names.end());
      std::string key;
      for (const auto& n : names) key += "*" + n;
      parts.emplace_back(key, c);
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    if (rational_ != 0 || parts.empty()) out = to_string(rational_);
    for (const auto& [key, c] : parts) {
      if (!out.empty()) out += " + ";
      out += to_string(c) + key;
    }
    return out;
  }

  static Coeff parse(const std::string& text) {
    Coeff out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(" + ", pos);
      std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      std::size_t star = part.find('*');
      if (star == std::string::npos) {
        out += Coeff(parse_rational(part));
      } else {
        Coeff term(parse_rational(part.substr(0, star)));
        std::size_t p = star + 1;
        while (p <= part.size()) {
          std::size_t q = part.find('*', p);
          term *= atom(part.substr(p, q == std::string::npos ? std::string::npos : q - p));
          if (q == std::string::npos) break;
          p = q + 1;
        }
        out += term;
      }
      if (next == std::string::npos) break;
      pos = next + 3;
    }
    return out;
  }

 private:
  Rational rational_{0};
  std::map<Monomial, Rational> terms_;
};

/// Polynomial in L with Coeff coefficients; trailing zeros stripped.
class ScalePoly {
 public:
  ScalePoly() = default;
  explicit ScalePoly(std::vector<Coeff> c) : c_(std::move(c)) { trim(); }

  static ScalePoly monomial(const Coeff& c, unsigned l) {
    std::vector<Coeff> v(l + 1);
    v[l] = c;
    return ScalePoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Coeff>& coefficients() const { return c_; }
  Coeff operator[](std::size_t l) const { return l < c_.size() ? c_[l] : Coeff(); }

  ScalePoly operator+(const ScalePoly& o) const {
    std::vector<Coeff> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return ScalePoly(std::move(c));
  }
  ScalePoly operator-() const {
    std::vector<Coeff> c = c_;
    for (auto& x : c) x = -x;
    return ScalePoly(std::move(c));
  }
  ScalePoly operator*(const ScalePoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Coeff> c(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j].is_zero()) continue;
        c[i + j] += c_[i] * o.c_[j];
      }
    }
    return ScalePoly(std::move(c));
  }
  ScalePoly scaled(const Coeff& k) const {
    std::vector<Coeff> c = c_;
    for (auto& x : c) x = x * k;
    return ScalePoly(std::move(c));
  }
  bool operator==(const ScalePoly& o) const { return c_ == o.c_; }

  /// Removes the L^0 coefficient.
  ScalePoly without_constant() const {
    std::vector<Coeff> c = c_;
    if (!c.empty()) c[0] = Coeff();
    return ScalePoly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Coeff> c_;
};

/// Truncated element of Q[L]((X)). Terms with X-exponent above `precision` are unknown.
class ScaleSeries {
 public:
  static constexpr int kExact = INT_MAX;

  ScaleSeries() = default;  // exact zero
  explicit ScaleSeries(int precision) : precision_(precision) {}

  static ScaleSeries term(const Coeff& c, unsigned l, int m, int precision = kExact) {
    ScaleSeries s(precision);
    s.add_term(m, ScalePoly::monomial(c, l));
    return s;
  }
  static ScaleSeries constant(const Coeff& c, int precision = kExact) {
    return term(c, 0, 0, precision);
  }

  static int add_prec(int a, int b) {
    if (a == kExact || b == kExact) return kExact;
    long long s = static_cast<long long>(a) + b;
    if (s >= kExact) return kExact - 1;
    if (s <= INT_MIN) return INT_MIN + 1;
    return static_cast<int>(s);
  }

  int precision() const { return precision_; }
  bool is_exact() const { return precision_ == kExact; }
  bool is_zero() const { return terms_.empty(); }
  /// Smallest exponent with a nonzero coefficient; nullopt stands for infinity.
  std::optional<int> order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  /// Largest stored exponent (nullopt for zero).
  std::optional<int> max_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }
  const std::map<int, ScalePoly>& terms() const { return terms_; }

  ScalePoly poly(int m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ScalePoly() : it->second;
  }
  Coeff coefficient(int m, unsigned l) const { return poly(m)[l]; }

  void add_term(int m, const ScalePoly& p) {
    if (m > precision_ || p.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, p);
    } else {
      it->second = it->second + p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ScaleSeries truncated(int precision) const {
    ScaleSeries r(std::min(precision, precision_));
    for (const auto& [m, p] : terms_) r.add_term(m, p);
    return r;
  }

  ScaleSeries operator+(const ScaleSeries& o) const {
    ScaleSeries r(std::min(precision_, o.precision_));
    for (const auto& [m, p] : terms_) r.add_term(m, p);
    for (const auto& [m, p] : o.terms_) r.add_term(m, p);
    return r;
  }
  ScaleSeries operator-() const {
    ScaleSeries r(precision_);
    for (const auto& [m, p] : terms_) r.terms_.emplace(m, -p);
    return r;
  }
  ScaleSeries operator-(const ScaleSeries& o) const { return *this + (-o); }
  ScaleSeries operator*(const ScaleSeries& o) const {
    int prec;
    auto of = order(), og = o.order();
    if (!of && !og) {
      prec = (is_exact() || o.is_exact()) ? kExact : add_prec(add_prec(precision_, o.precision_), 1);
    } else {
      int a = og ? add_prec(precision_, *og) : kExact;
      int b = of ? add_prec(o.precision_, *of) : kExact;
      prec = std::min(a, b);
    }
    ScaleSeries r(prec);
    for (const auto& [m1, p1] : terms_)
      for (const auto& [m2, p2] : o.terms_) {
        int m = m1 + m2;
        if (m > prec) continue;
        r.add_term(m, p1 * p2);
      }
    return r;
  }
  ScaleSeries scaled(const Coeff& k) const {
    ScaleSeries r(precision_);
    if (k.is_zero()) return r;
    for (const auto& [m, p] : terms_) r.add_term(m, p.scaled(k));
    return r;
  }
  ScaleSeries& operator+=(const ScaleSeries& o) { return *this = *this + o; }

  /// Equal terms and precision.
  bool operator==(const ScaleSeries& o) const {
    return precision_ == o.precision_ && terms_ == o.terms_;
  }

  /// The X^0 L^0 coefficient as a symbolic element.
  Coeff constant_coeff() const {
    if (precision_ < 0) throw std::domain_error("constant term not determined: precision < 0");
    return coefficient(0, 0);
  }
  /// Rational constant term; errors if it carries unresolved atoms.
  Rational constant_term() const { return constant_coeff().rational_value(); }
  MFloat constant_term(const std::function<MFloat(const std::string&)>& resolve) const {
    return constant_coeff().evaluate(resolve);
  }

  ScaleSeries without_constant() const {
    ScaleSeries r(precision_);
    for (const auto& [m, p] : terms_) r.add_term(m, m == 0 ? p.without_constant() : p);
    return r;
  }

  std::vector<std::string> atom_names() const {
    std::set<std::string> names;
    for (const auto& [m, p] : terms_)
      for (const auto& c : p.coefficients())
        for (const auto& n : c.atom_names()) names.insert(n);
    return {names.begin(), names.end()};
  }

  bool has_atoms() const {
    for (const auto& [m, p] : terms_)
      for (const auto& c : p.coefficients())
        if (!c.is_rational()) return true;
    return false;
  }

  /// sum_m F_m(log N) N^{-m}, atoms resolved by `resolve`.
  MFloat evaluate(const MFloat& n, const std::function<MFloat(const std::string&)>& resolve) const {
    MFloat logn = boost::multiprecision::log(n);
    MFloat acc = 0;
    for (const auto& [m, p] : terms_) {
      MFloat inner = 0;
      const auto& cs = p.coefficients();
      for (std::size_t l = cs.size(); l-- > 0;) inner = inner * logn + cs[l].evaluate(resolve);
      acc += inner * boost::multiprecision::pow(n, -m);
    }
    return acc;
  }
  MFloat evaluate(const MFloat& n) const {
    return evaluate(n, [](const std::string& name) -> MFloat { throw UnresolvedConstant(name); });
  }

  /// Sum of |terms| of the shell X^m at N, in double; used for magnitude estimates.
  double shell_magnitude(int m, double n,
                         const std::function<double(const std::string&)>& resolve) const {
    auto p = poly(m);
    double logn = std::log(n), acc = 0, lp = 1;
    for (const auto& c : p.coefficients()) {
      double v = c.rational_part().convert_to<double>();
      for (const auto& [mono, q] : c.atom_terms()) {
        double t = q.convert_to<double>();
        for (int id : mono) t *= resolve(detail::AtomTable::instance().name(id));
        v += t;
      }
      acc += std::fabs(v) * lp;
      lp *= logn;
    }
    return acc * std::pow(n, -m);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    auto ord = order();
    j["min_order"] = ord ? nlohmann::json(*ord) : nlohmann::json(nullptr);
    j["precision"] = is_exact() ? nlohmann::json(nullptr) : nlohmann::json(precision_);
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [m, p] : terms_) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : p.coefficients()) arr.push_back(c.str());
      t[std::to_string(m)] = arr;
    }
    j["terms"] = t;
    return j;
  }

  static ScaleSeries from_json(const nlohmann::json& j) {
    ScaleSeries s(j.at("precision").is_null() ? kExact : j.at("precision").get<int>());
    for (const auto& [key, arr] : j.at("terms").items()) {
      std::vector<Coeff> cs;
      for (const auto& c : arr) cs.push_back(Coeff::parse(c.get<std::string>()));
      s.add_term(std::stoi(key), ScalePoly(std::move(cs)));
    }
    return s;
  }

 private:
  std::map<int, ScalePoly> terms_;
  int precision_ = kExact;
};

inline std::optional<int> series_order(const ScaleSeries& f) { return f.order(); }
inline ScaleSeries series_add(const ScaleSeries& f, const ScaleSeries& g) { return f + g; }
inline ScaleSeries series_mul(const ScaleSeries& f, const ScaleSeries& g) { return f * g; }
inline Rational constant_term(const ScaleSeries& f) { return f.constant_term(); }

}  // namespace mzeta
