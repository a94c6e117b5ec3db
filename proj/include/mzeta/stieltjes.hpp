#pragma once

#include "config.hpp"
#include "mzv.hpp"
#include "partial_sums.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace mzeta {

/// Integer point (a_1, ..., a_r).
struct IntPoint {
  std::vector<int> coords;

  IntPoint() = default;
  IntPoint(std::vector<int> c) : coords(std::move(c)) {}
  IntPoint(std::initializer_list<int> c) : coords(c) {}

  std::size_t depth() const { return coords.size(); }
  int operator[](std::size_t i) const { return coords[i]; }

  /// a_1 + ... + a_i > i for every i.
  bool in_U() const {
    long s = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      s += coords[i];
      if (s <= static_cast<long>(i + 1)) return false;
    }
    return true;
  }
  /// a_1 + ... + a_i >= i for every i.
  bool in_closure() const {
    long s = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      s += coords[i];
      if (s < static_cast<long>(i + 1)) return false;
    }
    return true;
  }
  /// Indices i in {0, ..., r} with a_1 + ... + a_i = i.
  std::vector<std::size_t> index_set() const {
    std::vector<std::size_t> out{0};
    long s = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      s += coords[i];
      if (s == static_cast<long>(i + 1)) out.push_back(i + 1);
    }
    return out;
  }
  IntPoint tail(std::size_t from = 1) const {
    return IntPoint(std::vector<int>(coords.begin() + static_cast<long>(from), coords.end()));
  }
  bool operator==(const IntPoint&) const = default;
  auto operator<=>(const IntPoint&) const = default;
};

using OrderIndex = std::vector<unsigned>;

enum class StieltjesMethod { extrapolation, closed_form_assembly };

inline std::string method_name(StieltjesMethod m) {
  return m == StieltjesMethod::extrapolation ? "extrapolation" : "closed_form_assembly";
}

struct StieltjesValue {
  MFloat value;
  IntPoint point;
  OrderIndex order;
  bool star = false;
  MFloat est_error;
  StieltjesMethod method = StieltjesMethod::extrapolation;
};

namespace detail {

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline void check_shape(const IntPoint& a, const OrderIndex& k) {
  if (a.depth() != k.size()) throw std::invalid_argument("point and order have different depths");
  if (a.depth() > limits().depth_cap.load())
    throw std::invalid_argument("depth " + std::to_string(a.depth()) + " exceeds the configured cap");
}

}  // namespace detail

/// Atom name of a depth >= 2 constant: gamma(a1,..;k1,..) or gamma_star(a1,..;k1,..).
inline std::string stieltjes_name(const IntPoint& a, const OrderIndex& k, bool star) {
  return std::string(star ? "gamma_star(" : "gamma(") + detail::join(a.coords) + ";" + detail::join(k) + ")";
}

/// sum over N > n_1 > ... > n_r > 0 (or N >= n_1 >= ... >= n_r >= 1 when star) of
/// prod log^{k_i} n_i / n_i^{a_i}, one value per cutoff in `cutoffs` (ascending).
inline std::vector<MFloat> truncated_log_sums(const IntPoint& a, const OrderIndex& k,
                                              const std::vector<long>& cutoffs, bool star) {
  detail::check_shape(a, k);
  std::size_t r = a.depth();
  std::vector<MFloat> out;
  if (cutoffs.empty()) return out;
  if (!std::is_sorted(cutoffs.begin(), cutoffs.end()) || cutoffs.front() < 1)
    throw std::invalid_argument("truncated_log_sum: cutoffs must be ascending and >= 1");
  if (r == 0) return std::vector<MFloat>(cutoffs.size(), MFloat(1));

  std::vector<MFloat> acc(r + 1, MFloat(0));
  acc[r] = 1;
  std::size_t next = 0;
  auto last_index = [&](long cut) { return star ? cut : cut - 1; };
  auto record = [&](long done) {
    while (next < cutoffs.size() && last_index(cutoffs[next]) == done) {
      out.push_back(acc[0]);
      ++next;
    }
  };
  record(0);
  std::vector<MFloat> term(r);
  for (long n = 1; next < cutoffs.size(); ++n) {
    MFloat nn(n);
    MFloat logn = n == 1 ? MFloat(0) : boost::multiprecision::log(nn);
    for (std::size_t i = 0; i < r; ++i) {
      MFloat t = a[i] == 0 ? MFloat(1) : boost::multiprecision::pow(nn, -a[i]);
      if (k[i] > 0) t *= boost::multiprecision::pow(logn, static_cast<int>(k[i]));
      term[i] = t;
    }
    if (star) {
      for (std::size_t i = r; i-- > 0;) acc[i] += term[i] * acc[i + 1];
    } else {
      for (std::size_t i = 0; i < r; ++i) acc[i] += term[i] * acc[i + 1];
    }
    record(n);
  }
  return out;
}

inline MFloat truncated_log_sum(const IntPoint& a, const OrderIndex& k, long n, bool star) {
  return truncated_log_sums(a, k, {n}, star).front();
}

/// Formal expansion of the truncated sums to precision A. Constants of depth >= 2 that
/// are not determined exactly appear as the atom stieltjes_name(a, k, star).
inline ScaleSeries asymptotic_expansion(const IntPoint& a, const OrderIndex& k, int A, bool star) {
  detail::check_shape(a, k);
  if (a.depth() == 0) return ScaleSeries::constant(Coeff(1));

  static std::mutex mu;
  static std::map<std::tuple<IntPoint, OrderIndex, int, bool>, ScaleSeries> cache;
  auto key = std::make_tuple(a, k, A, star);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  OrderIndex rest(k.begin() + 1, k.end());
  ScaleSeries w = asymptotic_expansion(a.tail(), rest, A + 1 - a[0], star);
  ScaleSeries vw = ScaleSeries::term(Coeff(1), k[0], a[0]) * w;
  std::string name = stieltjes_name(a, k, star);
  auto summed = sum_sequence(vw, A, name);
  ScaleSeries out;
  if (!vw.is_exact() && a.depth() >= 2) {
    // the slot stands for the whole constant term
    ScaleSeries div = summed.divergent;
    if (star) div = div + vw.truncated(A).without_constant();
    out = div + ScaleSeries::constant(Coeff::atom(name), div.precision());
  } else {
    out = summed.expansion();
    if (star) out = out + (vw.is_exact() ? vw : vw.truncated(A));
  }

  std::lock_guard<std::mutex> lock(mu);
  cache[key] = out;
  return out;
}

inline StieltjesValue stieltjes_constant(const IntPoint& a, const OrderIndex& k, unsigned digits, bool star,
                                         StieltjesMethod method = StieltjesMethod::extrapolation);

namespace detail {

struct ParsedAtom {
  bool basis = false;
  BasisTerm term;
  IntPoint point;
  OrderIndex order;
  bool star = false;
};

inline std::vector<long> parse_int_list(const std::string& text) {
  std::vector<long> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stol(part));
  return out;
}

inline ParsedAtom parse_atom(const std::string& name) {
  ParsedAtom p;
  auto open = name.find('('), close = name.rfind(')');
  if (open == std::string::npos || close == std::string::npos) throw UnresolvedConstant(name);
  std::string head = name.substr(0, open), body = name.substr(open + 1, close - open - 1);
  if (head == "em") {
    auto v = parse_int_list(body);
    if (v.size() != 2 || v[0] < 0) throw UnresolvedConstant(name);
    p.basis = true;
    p.term = {static_cast<unsigned>(v[0]), static_cast<int>(v[1])};
    return p;
  }
  if (head != "gamma" && head != "gamma_star") throw UnresolvedConstant(name);
  p.star = head == "gamma_star";
  auto semi = body.find(';');
  if (semi == std::string::npos) throw UnresolvedConstant(name);
  for (long x : parse_int_list(body.substr(0, semi))) p.point.coords.push_back(static_cast<int>(x));
  for (long x : parse_int_list(body.substr(semi + 1))) p.order.push_back(static_cast<unsigned>(x));
  return p;
}

/// Numeric value of an em(..) or gamma(..) atom.
inline MFloat resolve_atom(const std::string& name, unsigned digits) {
  auto p = parse_atom(name);
  if (p.basis) return resolve_constant(p.term, digits);
  return stieltjes_constant(p.point, p.order, digits, p.star).value;
}

inline unsigned log_magnitude(double x) { return x > 1 ? static_cast<unsigned>(std::ceil(std::log10(x))) : 0; }

}  // namespace detail

/// Numeric resolver for every atom an expansion can contain.
inline std::function<MFloat(const std::string&)> atom_resolver(unsigned digits) {
  return [digits](const std::string& name) { return detail::resolve_atom(name, digits); };
}

/// Regularized multiple zeta function at s through its closed form: a sum of zeta values
/// of suffixes weighted by Bernoulli-Pochhammer corrections.
inline MComplex zeta_reg_closed_form(const IntPoint& a, const MVector& s, unsigned digits, bool star);

namespace detail {

inline StieltjesValue closed_form_constant(const IntPoint& a, const OrderIndex& k, unsigned digits, bool star);

inline StieltjesValue extrapolated_constant(const IntPoint& a, const OrderIndex& k, unsigned digits, bool star) {
  StieltjesValue out;
  out.point = a;
  out.order = k;
  out.star = star;
  out.method = StieltjesMethod::extrapolation;
  std::size_t r = a.depth();
  if (r == 0) {
    out.value = 1;
    out.est_error = 0;
    return out;
  }

  ScaleSeries e0 = asymptotic_expansion(a, k, 0, star);
  Coeff c0 = e0.constant_coeff();
  std::string self = stieltjes_name(a, k, star);
  auto names = c0.atom_names();
  if (std::find(names.begin(), names.end(), self) == names.end()) {
    // constant term is an exact combination of basis constants
    PrecisionScope scope(digits + 10);
    out.value = c0.evaluate(atom_resolver(digits + 2));
    out.est_error = names.empty() ? MFloat(0) : pow10(-static_cast<int>(digits) - 1);
    return out;
  }

  unsigned long n_max = limits().max_n.load();
  unsigned e = (digits + 4 + 2) / 3;
  long n = static_cast<long>(e >= 62 ? n_max : std::min<unsigned long>(n_max, 1ul << e));
  n = std::max(n, 16L);
  double logn = std::log(static_cast<double>(n));
  unsigned total_k = 0;
  for (unsigned x : k) total_k += x;
  int ord = e0.order().value_or(0);
  double mag = std::pow(static_cast<double>(n), std::max(0, -ord)) * std::pow(logn, total_k + r);
  unsigned lm = log_magnitude(mag);
  unsigned atom_digits = digits + 2 + lm;
  PrecisionScope scope(digits + 10 + lm);

  auto resolve = atom_resolver(atom_digits);
  std::map<std::string, double> dcache;
  auto resolve_d = [&](const std::string& name) {
    if (name == self) return 0.0;
    auto it = dcache.find(name);
    if (it != dcache.end()) return it->second;
    return dcache[name] = resolve(name).convert_to<double>();
  };

  double tol = std::pow(10.0, -static_cast<double>(digits) - 2);
  int A = std::max(2, static_cast<int>(std::ceil((digits + 2) / std::log10(static_cast<double>(n)))));
  ScaleSeries ex;
  double omitted = 0;
  for (;; A += 2) {
    if (A > 600) throw PrecisionUnreachable("stieltjes_constant: correction order cap reached for " + self);
    ex = asymptotic_expansion(a, k, A + 1, star);
    omitted = ex.shell_magnitude(A + 1, static_cast<double>(n), resolve_d);
    if (omitted < tol) break;
  }
  ScaleSeries div = ex.truncated(A).without_constant();
  auto sums = truncated_log_sums(a, k, {n / 2, n}, star);
  MFloat half = sums[0] - div.evaluate(MFloat(n / 2), resolve);
  out.value = sums[1] - div.evaluate(MFloat(n), resolve);
  out.est_error = boost::multiprecision::abs(out.value - half) + MFloat(omitted) +
                  pow10(-static_cast<int>(digits + 8));
  return out;
}

}  // namespace detail

/// Multiple (star) Stieltjes constant of order k at the integer point a.
inline StieltjesValue stieltjes_constant(const IntPoint& a, const OrderIndex& k, unsigned digits, bool star,
                                         StieltjesMethod method) {
  detail::check_shape(a, k);
  if (digits < 1 || digits > limits().max_digits.load())
    throw std::invalid_argument("digits out of range [1, " + std::to_string(limits().max_digits.load()) + "]");
  if (method == StieltjesMethod::closed_form_assembly) return detail::closed_form_constant(a, k, digits, star);

  static std::recursive_mutex mu;
  // keyed on the exact digit count so results never depend on call history
  static std::map<std::pair<std::string, unsigned>, StieltjesValue> cache;
  auto key = std::make_pair(stieltjes_name(a, k, star), digits);
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  StieltjesValue v = detail::extrapolated_constant(a, k, digits, star);
  cache[key] = v;
  return v;
}

// ---------------------------------------------------------------------------
// Closed form of the regularized function

namespace detail {

inline void reg_correction_rec(const IntPoint& a, const MVector& s, std::size_t j, long remaining,
                               const MComplex& base_in, const MComplex& coeff, bool plain_bernoulli,
                               MComplex& acc) {
  if (j == 0) {
    if (remaining == 0) acc += coeff;
    return;
  }
  // base = s_i + ... + s_j + k_i + ... + k_{j+1}
  MComplex base = base_in + s[j - 1];
  long hi = remaining + static_cast<long>(j) - 1;
  for (long kj = -1; kj <= hi; ++kj) {
    Rational b = bernoulli(static_cast<unsigned>(kj + 1), !plain_bernoulli);
    if (b == 0) continue;
    MComplex c = coeff * MComplex(to_mfloat(b / Rational(factorial(static_cast<unsigned>(kj + 1))))) *
                 pochhammer_value(base, static_cast<int>(kj));
    reg_correction_rec(a, s, j - 1, remaining - kj, base + MComplex(static_cast<int>(kj)), c, plain_bernoulli, acc);
  }
}

}  // namespace detail

/// Correction factor multiplying zeta(s_{i+1}, ..., s_r) in the closed form.
inline MComplex reg_correction(const IntPoint& a, const MVector& s, std::size_t i, bool star) {
  long target = 0;
  for (std::size_t j = 0; j < i; ++j) target -= a[j];
  if (target < -static_cast<long>(i)) return MComplex(0);
  MComplex acc(0);
  detail::reg_correction_rec(a, s, i, target, MComplex(0), MComplex(1), star, acc);
  return acc;
}

inline MComplex zeta_reg_closed_form(const IntPoint& a, const MVector& s, unsigned digits, bool star) {
  std::size_t r = a.depth();
  if (s.size() != r) throw std::invalid_argument("zeta_reg_closed_form: argument length mismatch");
  MComplex total(0);
  for (std::size_t i = 0; i <= r; ++i) {
    MComplex corr = reg_correction(a, s, i, star);
    if (corr.re == 0 && corr.im == 0) continue;
    MVector rest(s.begin() + static_cast<long>(i), s.end());
    MComplex z = zeta(rest, digits + 2, star ? Variant::star : Variant::strict);
    MComplex t = z * corr;
    total += i % 2 ? -t : t;
  }
  return total;
}

namespace detail {

inline std::vector<MFloat> torus_radii(std::size_t r) {
  std::vector<MFloat> rad(r);
  MFloat rho = MFloat(1) / 3;
  for (std::size_t j = 0; j < r; ++j) {
    rad[j] = rho;
    rho /= 3;
  }
  return rad;
}

/// Taylor coefficients of the closed form at a for all |k| <= D from an M^r point
/// trapezoid rule on a torus. Also returns the same with every other point (M/2).
inline std::pair<std::map<OrderIndex, MComplex>, std::map<OrderIndex, MComplex>> torus_coefficients(
    const IntPoint& a, unsigned D, unsigned digits, bool star, unsigned M) {
  std::size_t r = a.depth();
  auto rad = torus_radii(r);
  std::vector<OrderIndex> orders;
  {
    OrderIndex k(r, 0);
    for (;;) {
      unsigned t = 0;
      for (unsigned x : k) t += x;
      if (t <= D) orders.push_back(k);
      std::size_t i = 0;
      while (i < r && ++k[i] > D) k[i++] = 0;
      if (i == r) break;
    }
  }
  MFloat two_pi = 2 * boost::multiprecision::acos(MFloat(-1));
  std::vector<MComplex> roots(M);
  for (unsigned j = 0; j < M; ++j) {
    MFloat th = two_pi * j / M;
    roots[j] = MComplex(boost::multiprecision::cos(th), boost::multiprecision::sin(th));
  }
  std::map<OrderIndex, MComplex> full, coarse;
  for (const auto& k : orders) full[k] = coarse[k] = MComplex(0);
  std::vector<unsigned> idx(r, 0);
  for (;;) {
    MVector s(r);
    bool on_coarse = true;
    for (std::size_t i = 0; i < r; ++i) {
      s[i] = MComplex(a[i]) + roots[idx[i]] * MComplex(rad[i]);
      if (idx[i] % 2) on_coarse = false;
    }
    MComplex f = zeta_reg_closed_form(a, s, digits, star);
    for (const auto& k : orders) {
      // e^{-i k theta}
      MComplex w(1);
      for (std::size_t i = 0; i < r; ++i) {
        unsigned p = static_cast<unsigned>((static_cast<unsigned long>(k[i]) * idx[i]) % M);
        w = w * conj(roots[p]);
      }
      MComplex t = f * w;
      full[k] += t;
      if (on_coarse) coarse[k] += t;
    }
    std::size_t i = 0;
    while (i < r && ++idx[i] >= M) idx[i++] = 0;
    if (i == r) break;
  }
  for (const auto& k : orders) {
    MFloat scale_full = boost::multiprecision::pow(MFloat(M), -static_cast<int>(r));
    MFloat scale_coarse = boost::multiprecision::pow(MFloat(M / 2), -static_cast<int>(r));
    for (std::size_t i = 0; i < r; ++i) {
      MFloat rp = boost::multiprecision::pow(rad[i], -static_cast<int>(k[i]));
      scale_full *= rp;
      scale_coarse *= rp;
    }
    full[k] = full[k] * MComplex(scale_full);
    coarse[k] = coarse[k] * MComplex(scale_coarse);
  }
  return {full, coarse};
}

inline unsigned torus_points(unsigned digits, std::size_t r) {
  // aliasing decays like 0.4^M
  unsigned m = static_cast<unsigned>(std::ceil((digits + 2) / 0.39));
  if (r >= 3) m = std::min(m, 24u);
  m += m % 2;
  return std::max(m, 8u);
}

inline MFloat weight_factor(const OrderIndex& k) {
  // (-1)^{|k|} k_1! ... k_r!
  Rational w = 1;
  unsigned t = 0;
  for (unsigned x : k) {
    w *= Rational(factorial(x));
    t += x;
  }
  return to_mfloat(t % 2 ? -w : w);
}

inline StieltjesValue closed_form_constant(const IntPoint& a, const OrderIndex& k, unsigned digits, bool star) {
  StieltjesValue out;
  out.point = a;
  out.order = k;
  out.star = star;
  out.method = StieltjesMethod::closed_form_assembly;
  if (a.depth() == 0) {
    out.value = 1;
    out.est_error = 0;
    return out;
  }
  PrecisionScope scope(digits + 12);
  unsigned total = 0;
  for (unsigned x : k) total += x;
  auto [full, coarse] = torus_coefficients(a, total, digits + 2, star, torus_points(digits, a.depth()));
  MFloat w = weight_factor(k);
  out.value = full[k].re * w;
  out.est_error = boost::multiprecision::abs(w) * (abs(full[k] - coarse[k]) + boost::multiprecision::abs(full[k].im));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Regularized power series

struct RegSeries {
  IntPoint center;
  unsigned degree = 0;
  bool star = false;
  std::map<OrderIndex, MFloat> coefficients;
};

/// Coefficients (-1)^{|k|}/k! gamma_k at the center for |k| <= D.
inline RegSeries reg_series(const IntPoint& center, unsigned D, unsigned digits, bool star,
                            StieltjesMethod method = StieltjesMethod::extrapolation) {
  if (D > limits().degree_cap.load()) throw std::invalid_argument("degree exceeds the configured cap");
  RegSeries out;
  out.center = center;
  out.degree = D;
  out.star = star;
  std::size_t r = center.depth();
  if (r == 0) {
    out.coefficients[{}] = 1;
    return out;
  }
  if (method == StieltjesMethod::closed_form_assembly) {
    PrecisionScope scope(digits + 12);
    auto [full, coarse] =
        detail::torus_coefficients(center, D, digits + 2, star, detail::torus_points(digits, r));
    for (const auto& [k, c] : full) out.coefficients[k] = c.re;
    return out;
  }
  OrderIndex k(r, 0);
  for (;;) {
    unsigned t = 0;
    for (unsigned x : k) t += x;
    if (t <= D) {
      auto g = stieltjes_constant(center, k, digits, star);
      out.coefficients[k] = g.value / detail::weight_factor(k);
    }
    std::size_t i = 0;
    while (i < r && ++k[i] > D) k[i++] = 0;
    if (i == r) break;
  }
  return out;
}

struct RegEvaluation {
  MComplex value;
  MFloat remainder;
  bool divergence_warning = false;
};

/// Partial sum of the regularized series at s; the remainder is the size of the last
/// total-degree shell.
inline RegEvaluation eval_reg(const RegSeries& series, const MVector& s) {
  std::size_t r = series.center.depth();
  if (s.size() != r) throw std::invalid_argument("eval_reg: argument length mismatch");
  std::vector<MComplex> shells(series.degree + 1, MComplex(0));
  for (const auto& [k, c] : series.coefficients) {
    MComplex t(c);
    unsigned total = 0;
    for (std::size_t i = 0; i < r; ++i) {
      MComplex d = s[i] - MComplex(series.center[i]);
      for (unsigned p = 0; p < k[i]; ++p) t = t * d;
      total += k[i];
    }
    shells[total] += t;
  }
  RegEvaluation out;
  for (const auto& sh : shells) out.value += sh;
  out.remainder = abs(shells.back());
  if (series.degree >= 2) {
    MFloat prev = abs(shells[series.degree - 1]);
    out.divergence_warning = out.remainder > prev && out.remainder > MFloat(0);
  }
  return out;
}

}  // namespace mzeta
