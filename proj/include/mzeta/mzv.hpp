#pragma once

#include "config.hpp"
#include "exact_arith.hpp"
#include "multiprecision.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mzeta {

enum class Variant { strict, star };

using MVector = std::vector<MComplex>;

/// Sum over chains hi >= n_1 > ... > n_r >= lo (strict) or hi >= n_1 >= ... >= n_r >= lo (star)
/// of prod term(i, n_i). Returns the suffix sums: out[i] covers positions i..r-1, out[r] = 1.
template <class T, class Term>
std::vector<T> nested_suffix_sums(std::size_t r, long lo, long hi, bool star, Term term) {
  std::vector<T> acc(r + 1, T(0));
  acc[r] = T(1);
  for (long n = std::max(lo, 1L); n <= hi; ++n) {
    if (star) {
      for (std::size_t i = r; i-- > 0;) acc[i] += term(i, n) * acc[i + 1];
    } else {
      for (std::size_t i = 0; i < r; ++i) acc[i] += term(i, n) * acc[i + 1];
    }
  }
  return acc;
}

namespace detail {

inline MVector suffix_range_sums(const MVector& s, long lo, long hi, bool star) {
  std::size_t r = s.size();
  MVector acc(r + 1, MComplex(0));
  acc[r] = MComplex(1);
  MVector row(r);
  for (long n = std::max(lo, 1L); n <= hi; ++n) {
    MFloat logn = boost::multiprecision::log(MFloat(n));
    for (std::size_t i = 0; i < r; ++i) {
      if (s[i].im == 0)
        row[i] = MComplex(boost::multiprecision::exp(-s[i].re * logn));
      else
        row[i] = inverse_power(logn, s[i]);
    }
    if (star) {
      for (std::size_t i = r; i-- > 0;) acc[i] += row[i] * acc[i + 1];
    } else {
      for (std::size_t i = 0; i < r; ++i) acc[i] += row[i] * acc[i + 1];
    }
  }
  return acc;
}

}  // namespace detail

/// zeta(s)_{<N} (strict) or zeta*(s)_{<=N} (star).
inline MComplex zeta_truncated(const MVector& s, long n, Variant v) {
  if (n < 1) throw std::invalid_argument("zeta_truncated: N must be >= 1");
  bool star = v == Variant::star;
  return detail::suffix_range_sums(s, 1, star ? n : n - 1, star)[0];
}

struct TailResult {
  MComplex value;
  MFloat error;
};

namespace detail {

constexpr double kPoleTolerance = 1e-12;

// shells[k] = contribution of multi-indices with |k| = k to the tail starting at position j,
// with first argument sigma.
inline void tail_shells(const MVector& s, std::size_t j, const MComplex& sigma, const MFloat& log_n,
                        unsigned budget, unsigned used, const MComplex& coeff, bool star,
                        std::vector<MComplex>& shells) {
  bool last = j + 1 == s.size();
  for (unsigned k = 0; k <= budget; ++k) {
    Rational b = bernoulli(k, star);
    if (b == 0) continue;
    MComplex poch;
    if (k == 0) {
      MComplex d = sigma - MComplex(1);
      if (abs(d) < MFloat(kPoleTolerance))
        throw PoleProximity("tail expansion: reciprocal factor at pole (argument sum near 1)");
      poch = MComplex(1) / d;
    } else {
      poch = pochhammer_value(sigma, static_cast<int>(k) - 1);
    }
    MComplex c = coeff * poch * MComplex(to_mfloat(b / Rational(factorial(k))));
    if (c.re == 0 && c.im == 0) continue;
    if (last) {
      // N^{1 - sigma - k}
      MComplex e = MComplex(1 - static_cast<int>(k)) - sigma;
      shells[used + k] += c * exp(MComplex(e.re * log_n, e.im * log_n));
    } else {
      MComplex next = sigma + s[j + 1] + MComplex(static_cast<int>(k) - 1);
      tail_shells(s, j + 1, next, log_n, budget - k, used + k, c, star, shells);
    }
  }
}

}  // namespace detail

/// Asymptotic expansion of zeta(s)_{>N} (strict) or zeta*(s)_{>=N} (star), multi-indices |k| <= K.
/// The error estimate is the size of the next two shells.
inline TailResult zeta_tail(const MVector& s, long n, unsigned K, Variant v, bool check_decay = true) {
  if (n < 2) throw std::invalid_argument("zeta_tail: N must be >= 2");
  if (s.empty()) return {MComplex(1), MFloat(0)};
  std::vector<MComplex> shells(K + 3, MComplex(0));
  MFloat log_n = boost::multiprecision::log(MFloat(n));
  detail::tail_shells(s, 0, s[0], log_n, K + 2, 0, MComplex(1), v == Variant::star, shells);
  TailResult r;
  for (unsigned k = 0; k <= K; ++k) r.value += shells[k];
  r.error = abs(shells[K + 1]) + abs(shells[K + 2]);
  if (check_decay && K >= 2) {
    MFloat before = abs(shells[K - 1]) + abs(shells[K]);
    if (r.error > before && r.error > MFloat(0) && before > MFloat(0))
      throw PrecisionUnreachable("zeta_tail: N=" + std::to_string(n) + " too small for K=" + std::to_string(K));
  }
  return r;
}

/// Value with error estimate and the cutoffs that produced it.
struct ZetaValue {
  MComplex value;
  MFloat error;
  long n = 0;
  unsigned k = 0;
};

namespace detail {

inline std::string sum_label(std::size_t i) {
  std::string out = "s1";
  for (std::size_t j = 2; j <= i; ++j) out += "+s" + std::to_string(j);
  return out;
}

// Polar set: s1 = 1; s1+s2 in {2,1,0,-2,-4,...}; s1+..+si integer <= i for i >= 3.
inline void check_polar(const MVector& s) {
  MComplex sigma(0);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    sigma = sigma + s[i - 1];
    MFloat near_int = boost::multiprecision::round(sigma.re);
    long v = near_int.convert_to<long>();
    bool candidate;
    if (i == 1)
      candidate = v == 1;
    else if (i == 2)
      candidate = v == 2 || v == 1 || v == 0 || (v < 0 && v % 2 == 0);
    else
      candidate = v <= static_cast<long>(i);
    if (!candidate) continue;
    MFloat dist = boost::multiprecision::hypot(sigma.re - near_int, sigma.im);
    std::string where = "polar hyperplane " + sum_label(i) + "=" + std::to_string(v);
    if (dist == 0) throw PolarPoint(where);
    if (dist < MFloat(kPoleTolerance)) throw PoleProximity("near " + where);
  }
}

inline unsigned guard_digits(const MVector& s, long n) {
  // sums grow like N^{sum of max(0, 1 - Re s_i)}
  double growth = 0;
  for (const auto& x : s) growth += std::max(0.0, 1.0 - x.re.convert_to<double>());
  return 10 + static_cast<unsigned>(growth * std::log10(static_cast<double>(n)) + 0.999);
}

// tail_{>N} (strict) or tail_{>=N} (star) split at cutoff M.
inline ZetaValue split_tail(const MVector& s, long n, long m, unsigned k, bool star) {
  std::size_t r = s.size();
  Variant v = star ? Variant::star : Variant::strict;
  MVector head = star ? suffix_range_sums(s, n, m - 1, true) : suffix_range_sums(s, n + 1, m, false);
  ZetaValue out;
  out.n = m;
  out.k = k;
  out.value = head[0];
  for (std::size_t j = 1; j <= r; ++j) {
    MVector prefix(s.begin(), s.begin() + static_cast<long>(j));
    auto t = zeta_tail(prefix, m, k, v, false);
    out.value += t.value * head[j];
    out.error += t.error * abs(head[j]);
  }
  return out;
}

inline ZetaValue adaptive_tail(const MVector& s, long n, unsigned digits, bool star) {
  if (s.empty()) return {MComplex(1), MFloat(0), 0, 0};
  unsigned long n_max = limits().max_n.load();
  long m = std::max(16L, 2 * n);
  unsigned k = 4;
  for (;;) {
    if (static_cast<unsigned long>(m) > n_max || k > 40)
      throw PrecisionUnreachable("zeta evaluation did not reach " + std::to_string(digits) + " digits");
    PrecisionScope scope(digits + guard_digits(s, m));
    ZetaValue z = split_tail(s, n, m, k, star);
    MFloat tol = pow10(-static_cast<int>(digits) - 2) * std::max(MFloat(1), abs(z.value));
    if (z.error < tol) return z;
    m *= 2;
    k += 2;
  }
}

}  // namespace detail

/// zeta(s)_{>N} for N >= 0 (strict) or zeta*(s)_{>=N} for N >= 1 (star), to about `digits` digits.
inline ZetaValue zeta_tail_value(const MVector& s, long n, unsigned digits, Variant v) {
  bool star = v == Variant::star;
  if (n < (star ? 1 : 0)) throw std::invalid_argument("zeta_tail_value: N out of range");
  ZetaValue z = detail::adaptive_tail(s, n, digits, star);
  return z;
}

/// zeta or zeta* continued to all of C^r away from the polar set.
inline ZetaValue zeta_value(const MVector& s, unsigned digits, Variant v = Variant::strict) {
  if (s.empty()) return {MComplex(1), MFloat(0), 0, 0};
  if (v == Variant::strict) {
    detail::check_polar(s);
    return detail::adaptive_tail(s, 0, digits, false);
  }
  // zeta* as the sum of zeta over all ways to merge adjacent arguments
  std::size_t r = s.size();
  if (r == 1) return zeta_value(s, digits, Variant::strict);
  ZetaValue total;
  for (unsigned long mask = 0; mask < (1ul << (r - 1)); ++mask) {
    MVector merged{s[0]};
    for (std::size_t i = 1; i < r; ++i) {
      if (mask & (1ul << (i - 1)))
        merged.back() = merged.back() + s[i];
      else
        merged.push_back(s[i]);
    }
    ZetaValue z = zeta_value(merged, digits + 1, Variant::strict);
    total.value += z.value;
    total.error += z.error;
    total.n = std::max(total.n, z.n);
    total.k = std::max(total.k, z.k);
  }
  return total;
}

inline MComplex zeta(const MVector& s, unsigned digits, Variant v = Variant::strict) {
  return zeta_value(s, digits, v).value;
}

/// Mixed partial derivative by tensor central differences with one Richardson step.
inline MComplex zeta_partial_derivative(const MVector& s, const std::vector<unsigned>& order, unsigned digits,
                                        Variant v = Variant::strict) {
  if (order.size() != s.size()) throw std::invalid_argument("zeta_partial_derivative: order/argument length mismatch");
  unsigned total = 0;
  for (unsigned k : order) total += k;
  if (total == 0) return zeta_value(s, digits, v).value;

  unsigned step_digits = std::max(1u, digits / 3);
  unsigned inner_digits = digits + total * step_digits + 6;
  PrecisionScope scope(inner_digits + 10);
  MFloat h = pow10(-static_cast<int>(step_digits));

  auto difference = [&](const MFloat& step) {
    std::size_t r = s.size();
    std::vector<unsigned> j(r, 0);
    MComplex acc(0);
    for (;;) {
      MVector p = s;
      Rational weight = 1;
      for (std::size_t i = 0; i < r; ++i) {
        weight *= Rational(binomial(order[i], j[i]));
        if (j[i] % 2) weight = -weight;
        MFloat shift = (MFloat(order[i]) / 2 - MFloat(j[i])) * step;
        p[i] = p[i] + MComplex(shift);
      }
      acc += zeta_value(p, inner_digits, v).value * MComplex(to_mfloat(weight));
      std::size_t i = 0;
      while (i < r && ++j[i] > order[i]) j[i++] = 0;
      if (i == r) break;
    }
    MFloat denom = boost::multiprecision::pow(step, static_cast<int>(total));
    return MComplex(acc.re / denom, acc.im / denom);
  };
  MComplex d1 = difference(h);
  MComplex d2 = difference(h / 2);
  MComplex out = (d2 * MComplex(4) - d1) / MComplex(3);
  return out;
}

}  // namespace mzeta
