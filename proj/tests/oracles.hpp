#pragma once

// Reference values computed without the library's own algorithms: MPFR special
// functions, brute-force sums and closed forms.

#include <mzeta/multiprecision.hpp>

#include <mpfr.h>

#include <cmath>
#include <vector>

namespace oracle {

using mzeta::MFloat;

inline MFloat pi() {
  MFloat r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline MFloat euler_gamma() {
  MFloat r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

/// Riemann zeta at a real argument.
inline MFloat zeta(const MFloat& x) {
  MFloat r;
  MFloat xx = mzeta::rounded(x);
  mpfr_zeta(r.backend().data(), xx.backend().data(), MPFR_RNDN);
  return r;
}

/// k-th derivative of the Riemann zeta function at a real point, by a high-order
/// central difference stencil on MPFR zeta values (run at raised precision).
inline MFloat zeta_derivative(const MFloat& x, int k) {
  if (k == 0) return zeta(x);
  MFloat h = mzeta::pow10(-static_cast<int>(mzeta::current_digits() / (k + 3)));
  // k-th central difference with Richardson: D(h) = delta^k / h^k
  auto diff = [&](const MFloat& step) {
    MFloat acc = 0;
    for (int j = 0; j <= k; ++j) {
      MFloat c = boost::multiprecision::pow(MFloat(-1), j);
      MFloat b = 1;
      for (int i = 0; i < j; ++i) b = b * (k - i) / (i + 1);
      acc += c * b * zeta(x + (MFloat(k) / 2 - j) * step);
    }
    return acc / boost::multiprecision::pow(step, k);
  };
  MFloat d1 = diff(h), d2 = diff(h / 2);
  return (4 * d2 - d1) / 3;
}

/// Brute-force nested sum over N > n1 > ... > nr > 0 (real exponents), depth <= 3.
inline MFloat nested_strict(const std::vector<double>& s, long n_bound) {
  MFloat total = 0;
  std::size_t r = s.size();
  if (r == 0) return 1;
  std::vector<MFloat> inner(static_cast<std::size_t>(n_bound) + 1, MFloat(1));
  // inner[n] = sum over chains below n of the remaining exponents
  for (std::size_t d = r; d-- > 0;) {
    std::vector<MFloat> next(static_cast<std::size_t>(n_bound) + 1, MFloat(0));
    MFloat running = 0;
    for (long n = 1; n <= n_bound; ++n) {
      next[static_cast<std::size_t>(n)] = running;
      MFloat term = boost::multiprecision::pow(MFloat(n), -MFloat(s[d]));
      running += term * (d + 1 == r ? MFloat(1) : inner[static_cast<std::size_t>(n)]);
    }
    if (d == 0) return running;
    inner = next;
  }
  return total;
}

}  // namespace oracle
