#pragma once

#include "exact_arith.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <ios>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mzeta {

using MFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

/// Sets the working precision (decimal digits) for values created in its lifetime.
/// The underlying default is process-wide, so nested scopes restore in LIFO order.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : saved_(MFloat::default_precision()) {
    MFloat::default_precision(std::max(digits10, 20u));
  }
  ~PrecisionScope() { MFloat::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline unsigned current_digits() { return MFloat::default_precision(); }

/// Copy at the current working precision.
inline MFloat rounded(const MFloat& x) { return MFloat(x, current_digits()); }

inline MFloat to_mfloat(const Rational& q) {
  MFloat n(boost::multiprecision::numerator(q).str());
  MFloat d(boost::multiprecision::denominator(q).str());
  return n / d;
}

inline MFloat pow10(int e) { return boost::multiprecision::pow(MFloat(10), e); }

/// Fixed-point decimal string with `digits` places after the point; never "-0.000".
inline std::string format_fixed(const MFloat& x, unsigned digits) {
  std::string s = x.str(static_cast<std::streamsize>(digits), std::ios_base::fixed);
  if (!s.empty() && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string format_sci(const MFloat& x, unsigned digits = 3) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

struct MComplex {
  MFloat re{0};
  MFloat im{0};

  MComplex() = default;
  MComplex(const MFloat& r) : re(r), im(0) {}  // NOLINT
  MComplex(const MFloat& r, const MFloat& i) : re(r), im(i) {}
  MComplex(int r) : re(r), im(0) {}  // NOLINT
  MComplex(const Rational& q) : re(to_mfloat(q)), im(0) {}  // NOLINT

  MComplex operator+(const MComplex& o) const { return {re + o.re, im + o.im}; }
  MComplex operator-(const MComplex& o) const { return {re - o.re, im - o.im}; }
  MComplex operator-() const { return {-re, -im}; }
  MComplex operator*(const MComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  MComplex operator*(const MFloat& x) const { return {re * x, im * x}; }
  MComplex operator/(const MComplex& o) const {
    MFloat d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  MComplex& operator+=(const MComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MComplex& operator-=(const MComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  MComplex& operator*=(const MComplex& o) { return *this = *this * o; }
  bool operator==(const MComplex& o) const { return re == o.re && im == o.im; }
  bool is_real() const { return im == 0; }
};

inline MFloat abs(const MComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }
inline MComplex conj(const MComplex& z) { return {z.re, -z.im}; }

inline MComplex exp(const MComplex& z) {
  MFloat m = boost::multiprecision::exp(z.re);
  if (z.im == 0) return {m, MFloat(0)};
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

/// n^{-s} for a positive integer n given log n.
inline MComplex inverse_power(const MFloat& log_n, const MComplex& s) {
  return exp(MComplex(-s.re * log_n, -s.im * log_n));
}

inline MComplex rounded(const MComplex& z) { return {rounded(z.re), rounded(z.im)}; }

/// "re" or "re+imi" / "re-imi"; plain numbers are real.
inline MComplex parse_complex(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty complex number");
  auto parse_real = [&](const std::string& s) {
    if (s.empty() || s == "+" || s == "-") throw std::invalid_argument("bad number '" + text + "'");
    std::size_t pos = 0;
    (void)std::stod(s, &pos);  // syntax check only
    if (pos != s.size()) throw std::invalid_argument("bad number '" + text + "'");
    return MFloat(s);
  };
  try {
    if (t.back() != 'i') return MComplex(parse_real(t));
    std::string body = t.substr(0, t.size() - 1);
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      std::string im = body;
      if (im.empty() || im == "+" || im == "-") im += "1";
      return MComplex(MFloat(0), parse_real(im));
    }
    std::string im = body.substr(split);
    if (im == "+" || im == "-") im += "1";
    return MComplex(parse_real(body.substr(0, split)), parse_real(im));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad complex number '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("bad complex number '" + text + "'");
  }
}

inline std::string format_complex(const MComplex& z, unsigned digits) {
  if (z.im == 0) return format_fixed(z.re, digits);
  std::string im = format_fixed(z.im, digits);
  if (im[0] != '-') im = "+" + im;
  return format_fixed(z.re, digits) + im + "i";
}

}  // namespace mzeta
