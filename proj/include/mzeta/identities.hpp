#pragma once

#include "mzv.hpp"
#include "ratfunc.hpp"
#include "stieltjes.hpp"
#include "stuffle.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mzeta {

/// Outcome of one numeric identity check.
struct IdentityCheck {
  std::string name;
  /// "equality": passed iff abs_gap <= tolerance; "nonvanishing": passed iff abs_gap > tolerance.
  std::string kind = "equality";
  nlohmann::json parameters = nlohmann::json::object();
  MComplex lhs, rhs;
  MFloat abs_gap{0}, tolerance{0};
  bool passed = false;
  nlohmann::json details = nlohmann::json::object();

  void finalize() {
    abs_gap = abs(lhs - rhs);
    passed = kind == "nonvanishing" ? abs_gap > tolerance : abs_gap <= tolerance;
  }

  nlohmann::json to_json(unsigned digits) const {
    nlohmann::json j{{"name", name},
                     {"kind", kind},
                     {"parameters", parameters},
                     {"lhs", format_complex(lhs, digits)},
                     {"rhs", format_complex(rhs, digits)},
                     {"abs_gap", format_sci(abs_gap)},
                     {"tolerance", format_sci(tolerance)},
                     {"passed", passed}};
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

/// {"checks": [...], "summary": {total, passed, failed}} with checks ordered by name.
inline nlohmann::json identity_report(std::vector<IdentityCheck> checks, unsigned digits) {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const IdentityCheck& a, const IdentityCheck& b) { return a.name < b.name; });
  nlohmann::json list = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    list.push_back(c.to_json(digits));
    if (c.passed) ++passed;
  }
  return {{"checks", list},
          {"summary", {{"total", checks.size()}, {"passed", passed}, {"failed", checks.size() - passed}}}};
}

/// 10^{2-d} per right-hand-side term.
inline MFloat identity_tolerance(unsigned digits, std::size_t terms) {
  return pow10(2 - static_cast<int>(digits)) * MFloat(static_cast<unsigned>(std::max<std::size_t>(terms, 1)));
}

/// Floor applied when a side is a truncated power series evaluated off its center.
constexpr double kSeriesToleranceFloor = 1e-6;

inline MFloat series_tolerance(unsigned digits, std::size_t terms) {
  return std::max(identity_tolerance(digits, terms), MFloat(kSeriesToleranceFloor));
}

// ---------------------------------------------------------------------------
// Seeded points

/// Deterministic generator shared by every seeded check.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [0, 1), independent of the standard library's distributions.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 eng_;
};

/// Offsets with coordinates of size 0.03-0.1 and random signs, scaled so the l1 norm is
/// at most 0.1; every block sum stays at least 0.005 away from zero.
inline std::vector<double> seeded_offsets(std::size_t r, SeededRng& rng) {
  for (;;) {
    std::vector<double> d(r);
    double l1 = 0;
    for (auto& x : d) {
      x = rng.uniform(0.03, 0.1) * (rng.uniform() < 0.5 ? -1 : 1);
      l1 += std::fabs(x);
    }
    if (l1 > 0.1)
      for (auto& x : d) x *= 0.1 / l1;
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      double s = 0;
      for (std::size_t j = i; j < r && ok; ++j) {
        s += d[j];
        if (std::fabs(s) < 0.005) ok = false;
      }
    }
    if (ok) return d;
  }
}

inline std::vector<double> seeded_offsets(std::size_t r, std::uint64_t seed) {
  SeededRng rng(seed);
  return seeded_offsets(r, rng);
}

/// a + offsets as complex arguments.
inline MVector shifted(const IntPoint& a, const std::vector<double>& offsets) {
  if (offsets.size() != a.depth()) throw std::invalid_argument("offset length does not match the point");
  MVector s;
  for (std::size_t i = 0; i < a.depth(); ++i) s.emplace_back(MFloat(a[i]) + MFloat(offsets[i]));
  return s;
}

namespace detail {

inline nlohmann::json complex_list(const MVector& s, unsigned digits) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : s) j.push_back(format_complex(x, digits));
  return j;
}

inline MVector slice(const MVector& s, std::size_t from, std::size_t to) {
  return MVector(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to));
}

inline MVector reversed(MVector s) {
  std::reverse(s.begin(), s.end());
  return s;
}

inline bool off_center(const IntPoint& a, const MVector& s) {
  for (std::size_t i = 0; i < a.depth(); ++i)
    if (s[i].re != a[i] || s[i].im != 0) return true;
  return false;
}

inline std::vector<Rational> shifted_args(const IntPoint& a, const std::vector<Rational>& x) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.depth(); ++i) out.push_back(Rational(a[i]) + x[i]);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Regularized values

/// Series degree used off the center when none is requested.
inline unsigned default_series_degree() { return limits().degree_cap.load(); }

/// zeta^Reg_a(s) (or the star version) from the regularized power series.
inline RegEvaluation reg_value(const IntPoint& a, const MVector& s, unsigned digits, bool star, unsigned degree = 0) {
  if (a.depth() == 0) return {MComplex(1), MFloat(0), false};
  unsigned D = detail::off_center(a, s) ? (degree ? degree : default_series_degree()) : 0;
  return eval_reg(reg_series(a, D, digits, star), s);
}

/// Reciprocal chain 1 / ((s_i - 1)(s_i + s_{i-1} - 2) ... (s_i + ... + s_1 - i)).
inline MComplex reg_exp_chain(const MVector& s, std::size_t i) {
  MComplex acc(1), sum(0);
  for (std::size_t m = 1; m <= i; ++m) {
    sum += s[i - m];
    acc = acc / (sum - MComplex(static_cast<int>(m)));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Combinatorial formulas

enum class CombVariant { strict_1, star_2, cor };

inline std::string comb_variant_name(CombVariant v) {
  switch (v) {
    case CombVariant::strict_1:
      return "comb-form-1";
    case CombVariant::star_2:
      return "comb-form-2";
    default:
      return "comb-form-cor";
  }
}

/// Truncated sum against the alternating sum of reversed tails times complete values.
inline IdentityCheck check_comb_form(const MVector& s, long N, CombVariant variant, unsigned digits = 12) {
  if (N < 1) throw std::invalid_argument("check_comb_form: N must be at least 1");
  std::size_t r = s.size();
  for (const auto& x : s)
    if (x.re <= 1) throw std::invalid_argument("check_comb_form: arguments must have real part above 1");
  IdentityCheck c;
  c.name = comb_variant_name(variant);
  c.parameters = {{"depth", r}, {"point", detail::complex_list(s, digits)}, {"digits", digits}};
  unsigned work = digits + 4;
  PrecisionScope scope(work + 10);
  MComplex alt(0);
  for (std::size_t i = 0; i <= r; ++i) {
    MVector head = detail::reversed(detail::slice(s, 0, i));
    MVector rest = detail::slice(s, i, r);
    MComplex term;
    switch (variant) {
      case CombVariant::strict_1:
        term = zeta_tail_value(head, N, work, Variant::star).value * zeta(rest, work, Variant::strict);
        break;
      case CombVariant::star_2:
        term = zeta_tail_value(head, N, work, Variant::strict).value * zeta(rest, work, Variant::star);
        break;
      case CombVariant::cor:
        term = zeta(head, work, Variant::star) * zeta(rest, work, Variant::strict);
        break;
    }
    alt += i % 2 ? -term : term;
  }
  if (variant == CombVariant::cor) {
    c.lhs = alt;
    c.rhs = MComplex(0);
  } else {
    c.parameters["N"] = N;
    c.lhs = zeta_truncated(s, N, variant == CombVariant::strict_1 ? Variant::strict : Variant::star);
    c.rhs = alt;
  }
  c.tolerance = identity_tolerance(digits, r + 1);
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Expansions at integer points of the closure

inline void require_closure(const IntPoint& a, const char* who) {
  if (!a.in_closure()) throw std::invalid_argument(std::string(who) + ": point must lie in the closure of the domain");
}

inline nlohmann::json point_json(const IntPoint& a) { return a.coords; }

/// zeta^Reg_a against the sum over I of signed zeta values times reciprocal chains.
inline IdentityCheck check_reg_exp(const IntPoint& a, const MVector& s, unsigned digits = 12, unsigned degree = 0) {
  require_closure(a, "check_reg_exp");
  std::size_t r = a.depth();
  IdentityCheck c;
  c.name = "reg-exp";
  c.parameters = {{"depth", r}, {"point", point_json(a)}, {"s", detail::complex_list(s, digits)}, {"digits", digits}};
  auto reg = reg_value(a, s, digits, false, degree);
  PrecisionScope scope(digits + 14);
  auto I = a.index_set();
  MComplex rhs(0);
  for (std::size_t i : I) {
    MComplex t = zeta(detail::slice(s, i, r), digits + 4) * reg_exp_chain(s, i);
    rhs += i % 2 ? -t : t;
  }
  c.lhs = reg.value;
  c.rhs = rhs;
  c.details = {{"series_remainder", format_sci(reg.remainder)}, {"divergence_warning", reg.divergence_warning}};
  c.tolerance = detail::off_center(a, s) ? series_tolerance(digits, I.size()) : identity_tolerance(digits, I.size());
  c.finalize();
  return c;
}

/// zeta(s) against the f_i-weighted sum of regularized values at the tails.
inline IdentityCheck check_inverse_exp(const IntPoint& a, const MVector& s, unsigned digits = 12,
                                       unsigned degree = 0) {
  require_closure(a, "check_inverse_exp");
  std::size_t r = a.depth();
  IdentityCheck c;
  c.name = "inverse-exp";
  c.parameters = {{"depth", r}, {"point", point_json(a)}, {"s", detail::complex_list(s, digits)}, {"digits", digits}};
  if (degree) c.parameters["degree"] = degree;
  auto I = a.index_set();
  IndexSet set(I.begin(), I.end());
  MVector x;
  for (const auto& v : s) x.push_back(v - MComplex(1));
  MComplex rhs(0);
  MFloat remainder(0);
  bool warning = false;
  for (std::size_t pos = 0; pos < I.size(); ++pos) {
    std::size_t i = I[pos];
    auto reg = reg_value(a.tail(i), detail::slice(s, i, r), digits, false, degree);
    PrecisionScope scope(digits + 14);
    MComplex f = f_rational(set, static_cast<unsigned>(i), static_cast<unsigned>(r)).evaluate_numeric(x);
    MComplex t = f * reg.value;
    // I_i = I n {1..i} has pos elements
    rhs += (i - pos) % 2 ? -t : t;
    remainder += abs(f) * reg.remainder;
    warning = warning || reg.divergence_warning;
  }
  {
    PrecisionScope scope(digits + 14);
    c.lhs = zeta(s, digits + 4);
  }
  c.rhs = rhs;
  c.details = {{"series_remainder", format_sci(remainder)}, {"divergence_warning", warning}};
  c.tolerance = detail::off_center(a, s) ? series_tolerance(digits, I.size()) : identity_tolerance(digits, I.size());
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Closed form at arbitrary integer points

namespace detail {

inline RatFunc pochhammer_ratfunc(std::size_t n, const std::vector<Rational>& coeffs, const Rational& constant, int k) {
  if (k == -1) return RatFunc::reciprocal(n, coeffs, constant - 1);
  RatFunc out(n, 1);
  for (int m = 0; m < k; ++m) out *= RatFunc::affine(n, coeffs, constant + m);
  return out;
}

inline void correction_ratfunc_rec(const IntPoint& a, std::size_t offset, std::size_t i, std::size_t j,
                                   long remaining, std::vector<Rational> base, Rational shift, const RatFunc& acc,
                                   bool plain_bernoulli, RatFunc& out) {
  std::size_t n = a.depth();
  if (j == 0) {
    if (remaining == 0) out += acc;
    return;
  }
  base[offset + j - 1] += 1;  // x_j = s_{o+i} + ... + s_{o+j} + k_i + ... + k_{j+1}
  long hi = remaining + static_cast<long>(j) - 1;
  for (long kj = -1; kj <= hi; ++kj) {
    Rational b = bernoulli(static_cast<unsigned>(kj + 1), !plain_bernoulli);
    if (b == 0) continue;
    RatFunc term = acc.scaled(b / Rational(factorial(static_cast<unsigned>(kj + 1)))) *
                   pochhammer_ratfunc(n, base, shift, static_cast<int>(kj));
    correction_ratfunc_rec(a, offset, i, j - 1, remaining - kj, base, shift + kj, term, plain_bernoulli, out);
  }
}

}  // namespace detail

/// Exact correction multiplying zeta(s_{o+i+1}, ..., s_r) in the closed form of the
/// regularized function at (a_{o+1}, ..., a_r), in the variables s_1..s_r.
inline RatFunc reg_correction_ratfunc(const IntPoint& a, std::size_t offset, std::size_t i, bool star) {
  std::size_t n = a.depth();
  long target = 0;
  for (std::size_t j = 0; j < i; ++j) target -= a[offset + j];
  RatFunc out(n);
  if (target < -static_cast<long>(i)) return out;
  detail::correction_ratfunc_rec(a, offset, i, i, target, std::vector<Rational>(n, Rational(0)), Rational(0),
                                 RatFunc(n, 1), star, out);
  return out;
}

/// zeta(s) = sum_j R_j(s) zeta^Reg_{(a_{j+1}, ..., a_r)}(s_{j+1}, ..., s_r), from the closed
/// form applied recursively to the tails.
inline std::vector<RatFunc> reg_decomposition(const IntPoint& a) {
  std::size_t r = a.depth();
  // rows[o][j]: coefficient of zeta^Reg at tail j in zeta(s_{o+1}, ..., s_r)
  std::vector<std::vector<RatFunc>> rows(r + 1, std::vector<RatFunc>(r + 1, RatFunc(r)));
  for (std::size_t o = r + 1; o-- > 0;) {
    rows[o][o] = RatFunc(r, 1);
    for (std::size_t i = 1; o + i <= r; ++i) {
      RatFunc ci = reg_correction_ratfunc(a, o, i, false);
      if (ci.is_zero()) continue;
      // zeta = zeta^Reg - sum_{i >= 1} (-1)^i C_i zeta(tail)
      RatFunc w = i % 2 ? ci : -ci;
      for (std::size_t j = o + i; j <= r; ++j)
        if (!rows[o + i][j].is_zero()) rows[o][j] += w * rows[o + i][j];
    }
  }
  return rows[0];
}

/// zeta^Reg_a against the closed-form assembly with Bernoulli corrections.
inline IdentityCheck check_gen_reg_exp(const IntPoint& a, const MVector& s, unsigned digits = 12, bool star = false,
                                       unsigned degree = 0) {
  std::size_t r = a.depth();
  IdentityCheck c;
  c.name = star ? "gen-reg-exp-star" : "gen-reg-exp";
  c.parameters = {{"depth", r}, {"point", point_json(a)}, {"s", detail::complex_list(s, digits)}, {"digits", digits}};
  auto reg = reg_value(a, s, digits, star, degree);
  std::size_t terms = 0;
  for (std::size_t i = 0; i <= r; ++i)
    if (!(reg_correction(a, s, i, star) == MComplex(0))) ++terms;
  {
    PrecisionScope scope(digits + 14);
    c.rhs = zeta_reg_closed_form(a, s, digits + 4, star);
  }
  c.lhs = reg.value;
  c.details = {{"series_remainder", format_sci(reg.remainder)}, {"divergence_warning", reg.divergence_warning}};
  c.tolerance = detail::off_center(a, s) ? series_tolerance(digits, terms) : identity_tolerance(digits, terms);
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Directional limits

struct DirectionalLimit {
  MComplex value;
  /// Largest coefficient of a negative power of t; zero when the limit exists.
  MFloat pole_residual{0};
  std::size_t terms = 0;
};

/// lim_{t -> 0} zeta(a + t d), with every rational factor expanded in t exactly.
inline DirectionalLimit directional_limit(const IntPoint& a, const std::vector<int>& dir, unsigned digits) {
  std::size_t r = a.depth();
  if (dir.size() != r) throw std::invalid_argument("direction length does not match the point");
  std::vector<Rational> base, d;
  for (std::size_t i = 0; i < r; ++i) {
    base.emplace_back(a[i]);
    d.emplace_back(dir[i]);
  }
  auto R = reg_decomposition(a);
  DirectionalLimit out;
  std::map<int, MComplex> by_power;
  PrecisionScope scope(digits + 10);
  for (std::size_t j = 0; j <= r; ++j) {
    if (R[j].is_zero()) continue;
    auto lr = R[j].on_line(base, d).laurent(0);
    if (lr.empty()) continue;
    ++out.terms;
    int lowest = lr.begin()->first;
    unsigned M = lowest < 0 ? static_cast<unsigned>(-lowest) : 0;
    IntPoint tail = a.tail(j);
    // directional Taylor coefficients of zeta^Reg at the tail
    std::vector<MComplex> cm(M + 1, MComplex(0));
    if (tail.depth() == 0) {
      cm[0] = MComplex(1);
    } else {
      auto series = reg_series(tail, M, digits + 2, false);
      for (const auto& [k, coeff] : series.coefficients) {
        unsigned total = 0;
        MFloat w = coeff;
        for (std::size_t i = 0; i < k.size(); ++i) {
          total += k[i];
          for (unsigned p = 0; p < k[i]; ++p) w *= dir[j + i];
        }
        cm[total] += MComplex(w);
      }
    }
    for (const auto& [e, q] : lr)
      for (unsigned m = 0; m <= M; ++m)
        if (e + static_cast<int>(m) <= 0) by_power[e + static_cast<int>(m)] += MComplex(q) * cm[m];
  }
  for (const auto& [p, v] : by_power) {
    if (p == 0)
      out.value = v;
    else
      out.pole_residual = std::max(out.pole_residual, abs(v));
  }
  return out;
}

/// lim zeta(s, 0) = 5/12 and lim zeta(0, s) = 1/3 at the origin.
inline std::pair<IdentityCheck, IdentityCheck> check_limits_at_origin(unsigned digits = 12) {
  if (digits > 12) throw std::invalid_argument("check_limits_at_origin: digits must be at most 12");
  IntPoint origin{0, 0};
  auto make = [&](const std::vector<int>& dir, const Rational& expected, const std::string& label) {
    auto lim = directional_limit(origin, dir, digits);
    IdentityCheck c;
    c.name = "limits-origin";
    c.parameters = {{"point", point_json(origin)}, {"direction", dir}, {"limit", label}, {"digits", digits}};
    c.lhs = lim.value;
    c.rhs = MComplex(expected);
    c.details = {{"expected", to_string(expected)},
                 {"pole_residual", format_sci(lim.pole_residual)},
                 {"gamma_00_at_origin", format_fixed(stieltjes_constant(origin, {0, 0}, digits, false).value, digits)},
                 {"gamma_0_at_0", format_fixed(stieltjes_constant(IntPoint{0}, {0}, digits, false).value, digits)}};
    c.tolerance = identity_tolerance(digits, lim.terms);
    c.finalize();
    if (lim.pole_residual > c.tolerance) c.passed = false;
    return c;
  };
  return {make({1, 0}, Rational(5, 12), "zeta(s,0)"), make({0, 1}, Rational(1, 3), "zeta(0,s)")};
}

// ---------------------------------------------------------------------------
// Stuffle product of regularized functions

inline IdentityCheck check_reg_stuffle(const IntPoint& a, const IntPoint& b, const MVector& s, const MVector& t,
                                       unsigned digits = 12, unsigned degree = 0) {
  require_closure(a, "check_reg_stuffle");
  require_closure(b, "check_reg_stuffle");
  if (s.size() != a.depth() || t.size() != b.depth())
    throw std::invalid_argument("check_reg_stuffle: argument length mismatch");
  IdentityCheck c;
  c.name = "reg-stuffle";
  c.parameters = {{"a", point_json(a)},
                  {"b", point_json(b)},
                  {"s", detail::complex_list(s, digits)},
                  {"t", detail::complex_list(t, digits)},
                  {"digits", digits}};
  bool off = detail::off_center(a, s) || detail::off_center(b, t);
  auto ra = reg_value(a, s, digits, false, degree);
  auto rb = reg_value(b, t, digits, false, degree);
  auto stufflings = enumerate_stufflings(static_cast<unsigned>(a.depth()), static_cast<unsigned>(b.depth()), false);
  MComplex rhs(0);
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& st : stufflings) {
    IntPoint cpt(deduce_sequence(a.coords, b.coords, st));
    MVector u = deduce_sequence(s, t, st);
    rhs += reg_value(cpt, u, digits, false, degree).value;
    centers.push_back(cpt.coords);
  }
  PrecisionScope scope(digits + 10);
  c.lhs = ra.value * rb.value;
  c.rhs = rhs;
  c.details = {{"centers", centers}};
  c.tolerance = off ? series_tolerance(digits, stufflings.size() + 1) : identity_tolerance(digits, stufflings.size() + 1);
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Unicity of the expansion at (1, ..., 1)

/// sum_i h_i(s_{i+1}, ..., s_r) / ((s_1 - 1) ... (s_1 + ... + s_i - i)); h_i uses variables i+1..r.
inline MComplex unicity_sum(const std::vector<MPoly>& h, const MVector& s) {
  std::size_t r = s.size();
  if (h.size() != r + 1) throw std::invalid_argument("unicity_sum: need r + 1 polynomials");
  MComplex total(0), chain(1), sum(0);
  for (std::size_t i = 0; i <= r; ++i) {
    if (i > 0) {
      sum += s[i - 1];
      chain = chain * (sum - MComplex(static_cast<int>(i)));
    }
    total += h[i].evaluate(s) / chain;
  }
  return total;
}

/// Random nonzero polynomials of degree at most 2 in the admissible variables.
inline std::vector<MPoly> random_unicity_polys(std::size_t r, SeededRng& rng) {
  std::vector<MPoly> h;
  bool nonzero = false;
  for (std::size_t i = 0; i <= r; ++i) {
    MPoly p(r, Rational(rng.integer(-2, 2)));
    for (std::size_t v = i; v < r; ++v) {
      p = p + MPoly::variable(r, v).scaled(Rational(rng.integer(-2, 2)));
      p = p + (MPoly::variable(r, v) * MPoly::variable(r, v)).scaled(Rational(rng.integer(-1, 1), 2));
    }
    nonzero = nonzero || !p.is_zero();
    h.push_back(p);
  }
  if (!nonzero) h[r] = MPoly(r, Rational(1));
  return h;
}

/// A nonzero tuple must give a sum that is not uniformly small near (1, ..., 1).
inline IdentityCheck check_unicity(std::size_t r, std::uint64_t seed, unsigned points = 10) {
  if (r > 3) throw std::invalid_argument("check_unicity: depth must be at most 3");
  SeededRng rng(seed);
  auto h = random_unicity_polys(r, rng);
  IdentityCheck c;
  c.name = "unicity";
  c.kind = "nonvanishing";
  c.parameters = {{"depth", r}, {"seed", seed}, {"points", points}};
  PrecisionScope scope(30);
  MFloat biggest(0);
  IntPoint ones(std::vector<int>(r, 1));
  for (unsigned k = 0; k < points; ++k) biggest = std::max(biggest, abs(unicity_sum(h, shifted(ones, seeded_offsets(r, rng)))));
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : h) polys.push_back(p.str());
  c.details = {{"h", polys}};
  c.lhs = MComplex(biggest);
  c.rhs = MComplex(0);
  c.tolerance = MFloat(kSeriesToleranceFloor);
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Named suites

struct SuiteOptions {
  unsigned digits = 12;
  std::uint64_t seed = 42;
  /// 0 runs every depth the suite covers.
  std::size_t depth = 0;
};

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{"comb-form-1",      "comb-form-2", "comb-form-cor",
                                              "reg-exp",          "inverse-exp", "gen-reg-exp",
                                              "gen-reg-exp-star", "reg-stuffle", "limits-origin",
                                              "unicity"};
  return names;
}

namespace detail {

inline bool depth_selected(const SuiteOptions& o, std::size_t r) { return o.depth == 0 || o.depth == r; }

// Seeds derived from the suite seed and a per-check index.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  return seed * 0x9E3779B97F4A7C15ull + index * 0xBF58476D1CE4E5B9ull + 1;
}

inline MVector seeded_convergent_point(std::size_t r, SeededRng& rng) {
  MVector s;
  for (std::size_t i = 0; i < r; ++i) s.emplace_back(MFloat(rng.uniform(1.6, 4.0)), MFloat(rng.uniform(-1.0, 1.0)));
  return s;
}

inline std::vector<IdentityCheck> comb_suite(CombVariant v, const SuiteOptions& o) {
  std::vector<IdentityCheck> out;
  SeededRng rng(sub_seed(o.seed, static_cast<std::uint64_t>(v)));
  for (std::size_t r = 1; r <= 3; ++r) {
    if (!depth_selected(o, r)) continue;
    for (int k = 0; k < 5; ++k) {
      MVector s = seeded_convergent_point(r, rng);
      if (v == CombVariant::cor) {
        out.push_back(check_comb_form(s, 1, v, o.digits));
        continue;
      }
      for (long N : {2L, 5L, 10L}) out.push_back(check_comb_form(s, N, v, o.digits));
    }
  }
  return out;
}

template <class F>
std::vector<IdentityCheck> point_suite(const std::vector<IntPoint>& points, const SuiteOptions& o, std::uint64_t salt,
                                       F check) {
  std::vector<IdentityCheck> out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!depth_selected(o, points[k].depth())) continue;
    auto offsets = seeded_offsets(points[k].depth(), sub_seed(o.seed, salt * 100 + k));
    auto c = check(points[k], shifted(points[k], offsets));
    c.parameters["seed"] = o.seed;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

inline std::vector<IntPoint> closure_suite_points() { return {{1}, {2}, {2, 0}, {1, 1}, {1, 2}, {3, -1}, {2, 0, 1}}; }

inline std::vector<IntPoint> general_suite_points() {
  return {{1}, {0}, {-1}, {-2}, {0, 0}, {2, 0}, {1, 1}, {0, 1}, {2, 0, 1}};
}

inline std::vector<IntPoint> star_suite_points() { return {{1}, {0}, {-1}, {0, 0}, {1, 1}, {2, 0}}; }

/// Runs one named suite; throws std::invalid_argument for unknown names.
inline std::vector<IdentityCheck> run_identity_suite(const std::string& name, const SuiteOptions& o) {
  using detail::point_suite;
  if (name == "comb-form-1") return detail::comb_suite(CombVariant::strict_1, o);
  if (name == "comb-form-2") return detail::comb_suite(CombVariant::star_2, o);
  if (name == "comb-form-cor") return detail::comb_suite(CombVariant::cor, o);
  if (name == "reg-exp")
    return point_suite(closure_suite_points(), o, 1,
                       [&](const IntPoint& a, const MVector& s) { return check_reg_exp(a, s, o.digits); });
  if (name == "inverse-exp")
    return point_suite(closure_suite_points(), o, 2,
                       [&](const IntPoint& a, const MVector& s) { return check_inverse_exp(a, s, o.digits); });
  if (name == "gen-reg-exp")
    return point_suite(general_suite_points(), o, 3,
                       [&](const IntPoint& a, const MVector& s) { return check_gen_reg_exp(a, s, o.digits, false); });
  if (name == "gen-reg-exp-star")
    return point_suite(star_suite_points(), o, 4,
                       [&](const IntPoint& a, const MVector& s) { return check_gen_reg_exp(a, s, o.digits, true); });
  if (name == "reg-stuffle") {
    std::vector<IdentityCheck> out;
    std::vector<std::pair<IntPoint, IntPoint>> pairs{{{1}, {1}}, {{1}, {2}}, {{2, 0}, {1}}, {{1}, {1, 1}}, {{}, {1}}};
    // the first pair is evaluated at the centers
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [a, b] = pairs[k];
      if (!detail::depth_selected(o, a.depth() + b.depth())) continue;
      std::vector<double> off(a.depth() + b.depth(), 0.0);
      if (k > 0) off = seeded_offsets(off.size(), detail::sub_seed(o.seed, 500 + k));
      std::vector<double> oa(off.begin(), off.begin() + static_cast<long>(a.depth()));
      std::vector<double> ob(off.begin() + static_cast<long>(a.depth()), off.end());
      auto c = check_reg_stuffle(a, b, shifted(a, oa), shifted(b, ob), o.digits);
      c.parameters["seed"] = o.seed;
      out.push_back(std::move(c));
    }
    return out;
  }
  if (name == "limits-origin") {
    if (!detail::depth_selected(o, 2)) return {};
    auto [x, y] = check_limits_at_origin(std::min(o.digits, 12u));
    return {x, y};
  }
  if (name == "unicity") {
    std::vector<IdentityCheck> out;
    for (std::size_t r = 1; r <= 3; ++r)
      if (detail::depth_selected(o, r)) out.push_back(check_unicity(r, detail::sub_seed(o.seed, 900 + r)));
    return out;
  }
  if (name == "all") {
    std::vector<IdentityCheck> out;
    for (const auto& n : identity_names()) {
      auto part = run_identity_suite(n, o);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown identity '" + name + "'");
}

}  // namespace mzeta
