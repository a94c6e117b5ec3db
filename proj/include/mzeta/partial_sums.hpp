#pragma once

#include "config.hpp"
#include "scale_series.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>

namespace mzeta {

/// The sequence (log n)^l n^{-m}.
struct BasisTerm {
  unsigned l = 0;
  int m = 0;
  auto operator<=>(const BasisTerm&) const = default;
};

inline std::string em_name(const BasisTerm& t) {
  return "em(" + std::to_string(t.l) + "," + std::to_string(t.m) + ")";
}

/// Expansion of a partial sum: divergent part (without an X^0 L^0 term) plus the
/// regularized value as a symbolic constant.
struct SummationResult {
  ScaleSeries divergent;
  Coeff constant;

  ScaleSeries expansion() const {
    return divergent + ScaleSeries::constant(constant, divergent.precision());
  }
  /// Name of the constant when it is a single atom with coefficient 1, else "".
  std::string constant_slot() const {
    if (!constant.is_rational() && constant.rational_part() == 0 &&
        constant.atom_terms().size() == 1) {
      const auto& [mono, c] = *constant.atom_terms().begin();
      if (c == 1 && mono.size() == 1) return constant.atom_names().front();
    }
    return {};
  }
};

namespace detail {

// c (log t)^l t^{-m}, keyed by (l, m)
using LogPowerSum = std::map<std::pair<unsigned, int>, Rational>;

inline void accumulate(LogPowerSum& into, unsigned l, int m, const Rational& c) {
  if (c == 0) return;
  auto& slot = into[{l, m}];
  slot += c;
  if (slot == 0) into.erase({l, m});
}

inline LogPowerSum derivative(const LogPowerSum& f) {
  LogPowerSum d;
  for (const auto& [key, c] : f) {
    auto [l, m] = key;
    if (l > 0) accumulate(d, l - 1, m + 1, c * l);
    if (m != 0) accumulate(d, l, m + 1, -c * m);
  }
  return d;
}

// Integration by parts, without integration constant.
inline LogPowerSum antiderivative(unsigned l, int m) {
  LogPowerSum out;
  if (m == 1) {
    accumulate(out, l + 1, 0, Rational(1, l + 1));
    return out;
  }
  Rational k = Rational(1) / Rational(1 - m);
  accumulate(out, l, m - 1, k);
  if (l > 0)
    for (const auto& [key, c] : antiderivative(l - 1, m)) accumulate(out, key.first, key.second, -k * l * c);
  return out;
}

// F(N) + sum_{k>=1} B_k/k! f^{(k-1)}(N), terms of X-order <= max_order (all, if exact).
inline LogPowerSum euler_maclaurin(const BasisTerm& t, int max_order, bool exact) {
  LogPowerSum out = antiderivative(t.l, t.m);
  if (!exact)
    for (auto it = out.begin(); it != out.end();) it = it->first.second > max_order ? out.erase(it) : std::next(it);
  LogPowerSum f;
  accumulate(f, t.l, t.m, Rational(1));
  Rational kfact = 1;
  for (unsigned k = 1;; ++k) {
    if (f.empty()) break;
    if (!exact && t.m + static_cast<int>(k) - 1 > max_order) break;
    kfact *= k;
    Rational b = bernoulli(k);
    if (b != 0)
      for (const auto& [key, c] : f) accumulate(out, key.first, key.second, b / kfact * c);
    f = derivative(f);
  }
  return out;
}

}  // namespace detail

/// Expansion of sum_{1<=n<N} (log n)^l n^{-m} to precision A.
inline SummationResult sum_basis(const BasisTerm& t, int A) {
  static std::mutex mu;
  static std::map<std::pair<BasisTerm, int>, SummationResult> cache;
  bool exact = t.l == 0 && t.m <= 0;
  int key_prec = exact ? ScaleSeries::kExact : A;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({t, key_prec});
    if (it != cache.end()) return it->second;
  }
  auto em = detail::euler_maclaurin(t, A, exact);
  SummationResult r;
  r.divergent = ScaleSeries(exact ? ScaleSeries::kExact : A);
  Rational const0 = 0;
  Rational at_one = 0;
  for (const auto& [key, c] : em) {
    auto [l, m] = key;
    if (l == 0) at_one += c;
    if (l == 0 && m == 0) {
      const0 += c;
      continue;
    }
    r.divergent.add_term(m, ScalePoly::monomial(Coeff(c), l));
  }
  if (exact) {
    // the empty sum at N = 1 fixes the constant
    r.constant = Coeff(const0 - at_one);
  } else {
    r.constant = Coeff::atom(em_name(t));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(t, key_prec), r);
  return r;
}

/// Expansion of u_N = sum_{n<N} v_n from the expansion of v. The constant is exact
/// in terms of basis constants when v is exact; otherwise it is the atom `slot`.
inline SummationResult sum_sequence(const ScaleSeries& v, int A, const std::string& slot = "c") {
  if (v.precision() < ScaleSeries::add_prec(A, 1))
    throw InsufficientPrecision("sum_sequence: input precision " + std::to_string(v.precision()) +
                                " below required " + std::to_string(A + 1));
  SummationResult r;
  bool all_exact = v.is_exact();
  ScaleSeries div(ScaleSeries::kExact);
  Coeff constant;
  for (const auto& [m, p] : v.terms()) {
    const auto& cs = p.coefficients();
    for (std::size_t l = 0; l < cs.size(); ++l) {
      if (cs[l].is_zero()) continue;
      BasisTerm t{static_cast<unsigned>(l), m};
      if (m > A + 1) {
        all_exact = false;
        if (v.is_exact()) constant += cs[l] * Coeff::atom(em_name(t));
        continue;
      }
      auto s = sum_basis(t, A);
      if (!s.divergent.is_exact()) all_exact = false;
      div += s.divergent.scaled(cs[l]);
      constant += s.constant * cs[l];
    }
  }
  r.divergent = all_exact ? div : div.truncated(A);
  r.constant = v.is_exact() ? constant : Coeff::atom(slot);
  return r;
}

/// Numeric value of the basis constant em(l,m) to about `digits` digits.
inline MFloat resolve_constant(const BasisTerm& t, unsigned digits) {
  if (digits < 1) throw std::invalid_argument("resolve_constant: digits must be >= 1");
  if (t.l == 0 && t.m <= 0) return to_mfloat(sum_basis(t, 0).constant.rational_value());

  static std::mutex mu;
  // keyed on the exact digit count so results never depend on call history
  static std::map<std::pair<BasisTerm, unsigned>, std::string> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({t, digits});
    if (it != cache.end()) return MFloat(it->second);
  }

  unsigned long n_max = limits().max_n.load();
  unsigned e = (digits + 4 + 2) / 3;
  unsigned long n = e >= 63 ? n_max : std::min(n_max, 1ul << e);
  if (n < 4) n = 4;
  double logn = std::log(static_cast<double>(n));
  double mag = std::pow(logn, t.l) * std::pow(static_cast<double>(n), std::max(0, 1 - t.m));
  unsigned guard = 10 + static_cast<unsigned>(std::max(0.0, std::log10(mag + 1)));
  PrecisionScope scope(digits + guard);

  double tol = std::pow(10.0, -static_cast<double>(digits) - 2);
  auto no_atoms = [](const std::string& name) -> double { throw UnresolvedConstant(name); };
  int A = std::max(2, static_cast<int>(std::ceil((digits + 2) / std::log10(static_cast<double>(n)))));
  SummationResult s;
  for (;; A += 2) {
    if (A > 600) throw PrecisionUnreachable("resolve_constant: correction order cap reached for " + em_name(t));
    s = sum_basis(t, A + 1);
    double omitted = s.divergent.shell_magnitude(A + 1, static_cast<double>(n), no_atoms);
    if (omitted < tol) break;
  }
  MFloat u = 0;
  for (unsigned long k = 2; k < n; ++k) {
    MFloat kk(k);
    MFloat term = boost::multiprecision::pow(kk, -t.m);
    if (t.l > 0) term *= boost::multiprecision::pow(boost::multiprecision::log(kk), t.l);
    u += term;
  }
  if (t.l == 0) u += 1;
  MFloat value = u - s.divergent.truncated(A).evaluate(MFloat(n));
  std::lock_guard<std::mutex> lock(mu);
  cache[{t, digits}] = value.str(0, std::ios_base::scientific);
  return value;
}

}  // namespace mzeta
