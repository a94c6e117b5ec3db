#include <mzeta/stieltjes.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace mzeta;
namespace bm = boost::multiprecision;

namespace {

MFloat brute_log_sum(const std::vector<int>& a, const std::vector<unsigned>& k, long n, bool star) {
  // explicit nested loops, depth <= 3
  std::size_t r = a.size();
  auto term = [&](std::size_t i, long m) {
    MFloat mm(m);
    return bm::pow(bm::log(mm), static_cast<int>(k[i])) * bm::pow(mm, -a[i]);
  };
  MFloat total = 0;
  long top = star ? n : n - 1;
  if (r == 1) {
    for (long n1 = 1; n1 <= top; ++n1) total += term(0, n1);
  } else if (r == 2) {
    for (long n1 = 1; n1 <= top; ++n1)
      for (long n2 = 1; star ? n2 <= n1 : n2 < n1; ++n2) total += term(0, n1) * term(1, n2);
  } else {
    for (long n1 = 1; n1 <= top; ++n1)
      for (long n2 = 1; star ? n2 <= n1 : n2 < n1; ++n2)
        for (long n3 = 1; star ? n3 <= n2 : n3 < n2; ++n3) total += term(0, n1) * term(1, n2) * term(2, n3);
  }
  return total;
}

ScaleSeries L(unsigned l, int m = 0) { return ScaleSeries::term(Coeff(1), l, m); }

MFloat euler_gamma() { return oracle::euler_gamma(); }

}  // namespace

TEST(IntPoint, Predicates) {
  EXPECT_TRUE(IntPoint({2}).in_U());
  EXPECT_FALSE(IntPoint({1}).in_U());
  EXPECT_TRUE(IntPoint({1}).in_closure());
  EXPECT_TRUE(IntPoint({3, 0}).in_U());
  EXPECT_FALSE(IntPoint({2, 0}).in_U());
  EXPECT_TRUE(IntPoint({2, 0}).in_closure());
  EXPECT_FALSE(IntPoint({0, 2}).in_closure());
  EXPECT_EQ(IntPoint({1, 1, 1}).index_set(), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(IntPoint({2, 0, 1}).index_set(), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_TRUE(IntPoint().in_U());
}

TEST(TruncatedLogSum, Examples) {
  PrecisionScope scope(30);
  EXPECT_LT(bm::abs(truncated_log_sum({1}, {0}, 4, false) - MFloat(11) / 6), MFloat("1e-27"));
  EXPECT_LT(bm::abs(truncated_log_sum({1, 1}, {0, 0}, 3, false) - MFloat("0.5")), MFloat("1e-27"));
  EXPECT_LT(bm::abs(truncated_log_sum({0}, {1}, 4, false) - bm::log(MFloat(6))), MFloat("1e-27"));
  EXPECT_EQ(truncated_log_sum({}, {}, 7, false), MFloat(1));
  EXPECT_EQ(truncated_log_sum({1, 1}, {0, 0}, 1, false), MFloat(0));
}

TEST(TruncatedLogSum, MatchesNestedLoops) {
  PrecisionScope scope(30);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> adist(-2, 3);
  std::uniform_int_distribution<unsigned> kdist(0, 2);
  for (int it = 0; it < 30; ++it) {
    std::size_t r = 1 + it % 3;
    std::vector<int> a(r);
    std::vector<unsigned> k(r);
    for (std::size_t i = 0; i < r; ++i) a[i] = adist(rng), k[i] = kdist(rng);
    for (bool star : {false, true}) {
      long n = 12 + it;
      MFloat want = brute_log_sum(a, k, n, star);
      MFloat got = truncated_log_sum(IntPoint(a), k, n, star);
      EXPECT_LT(bm::abs(got - want), MFloat("1e-20") * (1 + bm::abs(want)));
    }
  }
}

TEST(AsymptoticExpansion, Examples) {
  auto h = asymptotic_expansion({1}, {0}, 0, false);
  EXPECT_EQ(h, (L(1) + ScaleSeries::constant(Coeff::atom("em(0,1)"))).truncated(0));

  auto hh = asymptotic_expansion({1, 1}, {0, 0}, 0, false);
  ScaleSeries want = L(2).scaled(Coeff(Rational(1, 2))) + L(1).scaled(Coeff::atom("em(0,1)")) +
                     ScaleSeries::constant(Coeff::atom("gamma(1,1;0,0)"));
  EXPECT_EQ(hh, want.truncated(0));

  auto z2 = asymptotic_expansion({2}, {0}, 0, false);
  EXPECT_TRUE(z2.without_constant().is_zero());
  EXPECT_EQ(z2.constant_coeff(), Coeff::atom("em(0,2)"));

  EXPECT_EQ(asymptotic_expansion({}, {}, 3, false), ScaleSeries::constant(Coeff(1)));
}

TEST(AsymptoticExpansion, ExactPolynomialCase) {
  // sum_{N > n1 > n2 > 0} 1 = (N-1)(N-2)/2
  auto e = asymptotic_expansion({0, 0}, {0, 0}, 0, false);
  EXPECT_TRUE(e.is_exact());
  ScaleSeries want = ScaleSeries::term(Coeff(Rational(1, 2)), 0, -2) - ScaleSeries::term(Coeff(Rational(3, 2)), 0, -1) +
                     ScaleSeries::constant(Coeff(1));
  EXPECT_EQ(e, want);
}

TEST(AsymptoticExpansion, OrderBound) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> adist(-2, 3);
  std::uniform_int_distribution<unsigned> kdist(0, 2);
  for (int it = 0; it < 60; ++it) {
    std::size_t r = 1 + it % 3;
    std::vector<int> a(r);
    OrderIndex k(r);
    for (std::size_t i = 0; i < r; ++i) a[i] = adist(rng), k[i] = kdist(rng);
    auto e = asymptotic_expansion(IntPoint(a), k, 1, rng() % 2);
    int bound = 0, s = 0;
    for (std::size_t i = 0; i < r; ++i) {
      s += a[i];
      bound = std::min(bound, s - static_cast<int>(i) - 1);
    }
    if (auto o = e.order()) EXPECT_GE(*o, bound);
  }
}

TEST(AsymptoticExpansion, BoundaryPolynomialProperty) {
  int checked = 0;
  for (std::size_t r = 1; r <= 3; ++r) {
    std::vector<int> a(r, -3);
    for (;;) {
      IntPoint p(a);
      if (p.in_closure()) {
        for (bool star : {false, true}) {
          auto d = asymptotic_expansion(p, OrderIndex(r, 0), 1, star).without_constant();
          if (auto o = d.order()) EXPECT_GE(*o, 0) << detail::join(a);
          auto dk = asymptotic_expansion(p, OrderIndex(r, 1), 1, star).without_constant();
          if (auto o = dk.order()) EXPECT_GE(*o, 0) << detail::join(a);
        }
        ++checked;
      }
      std::size_t i = 0;
      while (i < r && ++a[i] > 3) a[i++] = -3;
      if (i == r) break;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(AsymptoticExpansion, MatchesTruncatedSums) {
  // u_N - expansion(N) shrinks like N^{-A-1}
  PrecisionScope scope(40);
  for (auto [a, k] : std::vector<std::pair<IntPoint, OrderIndex>>{{{1, 1}, {0, 0}}, {{0, 1}, {1, 0}}, {{2, 0, 1}, {0, 0, 0}}}) {
    for (bool star : {false, true}) {
      auto e = asymptotic_expansion(a, k, 3, star);
      auto resolve = atom_resolver(25);
      auto sums = truncated_log_sums(a, k, {200, 400}, star);
      MFloat d1 = bm::abs(sums[0] - e.evaluate(MFloat(200), resolve));
      MFloat d2 = bm::abs(sums[1] - e.evaluate(MFloat(400), resolve));
      EXPECT_LT(d1, MFloat("1e-8")) << detail::join(a.coords);
      EXPECT_LT(d2, d1 / 8) << detail::join(a.coords);
    }
  }
}

TEST(StieltjesConstant, Examples) {
  PrecisionScope scope(40);
  auto g = stieltjes_constant({1}, {0}, 12, false);
  EXPECT_LT(bm::abs(g.value - euler_gamma()), MFloat("1e-12"));
  EXPECT_EQ(stieltjes_constant({0}, {0}, 12, false).value, MFloat(-1));

  auto g11 = stieltjes_constant({1, 1}, {0, 0}, 10, false);
  MFloat ref = (euler_gamma() * euler_gamma() - oracle::zeta(MFloat(2))) / 2;
  EXPECT_LT(bm::abs(g11.value - ref), MFloat("1e-10"));
  EXPECT_GE(g11.est_error, MFloat(0));
  EXPECT_LT(bm::abs(g11.value - ref), g11.est_error + MFloat("1e-12"));
  EXPECT_EQ(stieltjes_constant({}, {}, 10, false).value, MFloat(1));
}

TEST(StieltjesConstant, HalfLogTwoPi) {
  PrecisionScope scope(40);
  MFloat want = bm::log(2 * oracle::pi()) / 2;
  EXPECT_LT(bm::abs(stieltjes_constant({0}, {1}, 12, false).value - want), MFloat("1e-12"));
}

TEST(StieltjesConstant, OriginDoubleSumIsOne) {
  PrecisionScope scope(30);
  EXPECT_EQ(stieltjes_constant({0, 0}, {0, 0}, 10, false).value, MFloat(1));
}

TEST(StieltjesConstant, ConvergentPointConsistency) {
  PrecisionScope scope(40);
  MFloat d1;
  {
    PrecisionScope hi(60);
    d1 = oracle::zeta_derivative(MFloat(2), 1);
  }
  EXPECT_LT(bm::abs(stieltjes_constant({2}, {1}, 12, false).value + d1), MFloat("1e-10"));

  MVector s{MComplex(3), MComplex(2)};
  for (OrderIndex k : {OrderIndex{0, 0}, OrderIndex{1, 0}, OrderIndex{0, 1}, OrderIndex{1, 1}}) {
    auto g = stieltjes_constant({3, 2}, k, 10, false);
    MComplex d = zeta_partial_derivative(s, {k[0], k[1]}, 10);
    MFloat sign = (k[0] + k[1]) % 2 ? -1 : 1;
    EXPECT_LT(bm::abs(g.value - sign * d.re), MFloat("1e-6")) << k[0] << k[1];
  }
}

TEST(StieltjesConstant, StarPlainDepthOne) {
  PrecisionScope scope(40);
  for (int a = -2; a <= 3; ++a)
    for (unsigned k = 0; k <= 2; ++k) {
      auto p = stieltjes_constant({a}, {k}, 12, false);
      auto s = stieltjes_constant({a}, {k}, 12, true);
      if (a == 0 && k == 0) {
        // the star sum includes the final term n = N, which is the constant 1 here
        EXPECT_EQ(s.value - p.value, MFloat(1));
      } else {
        EXPECT_LT(bm::abs(s.value - p.value), MFloat("1e-12")) << a << "," << k;
      }
    }
}

TEST(StieltjesConstant, StarDoubleHarmonic) {
  // sum_{N >= n1 >= n2 >= 1} 1/(n1 n2) = (H_N^2 + H_N^(2)) / 2, constant (gamma^2 + zeta(2)) / 2
  PrecisionScope scope(40);
  auto g = stieltjes_constant({1, 1}, {0, 0}, 10, true);
  MFloat ref = (euler_gamma() * euler_gamma() + oracle::zeta(MFloat(2))) / 2;
  EXPECT_LT(bm::abs(g.value - ref), MFloat("1e-10"));
}

TEST(StieltjesConstant, ExtrapolationStability) {
  // three more digits doubles the cutoff
  PrecisionScope scope(40);
  for (auto [a, k] : std::vector<std::pair<IntPoint, OrderIndex>>{{{1, 1}, {0, 0}}, {{1, 1}, {1, 0}}, {{0, 1}, {0, 1}}}) {
    auto lo = detail::extrapolated_constant(a, k, 10, false);
    auto hi = detail::extrapolated_constant(a, k, 13, false);
    EXPECT_LT(bm::abs(lo.value - hi.value), lo.est_error) << detail::join(a.coords);
  }
}

TEST(StieltjesConstant, ClosedFormAgreesWithExtrapolation) {
  PrecisionScope scope(30);
  for (auto [a, k] : std::vector<std::pair<IntPoint, OrderIndex>>{{{1}, {1}}, {{-1}, {2}}, {{1, 1}, {0, 0}}, {{2, 0}, {1, 0}}}) {
    auto ex = stieltjes_constant(a, k, 10, false);
    auto cf = stieltjes_constant(a, k, 8, false, StieltjesMethod::closed_form_assembly);
    EXPECT_EQ(cf.method, StieltjesMethod::closed_form_assembly);
    EXPECT_LT(bm::abs(ex.value - cf.value), MFloat("1e-6")) << detail::join(a.coords);
  }
}

TEST(ClosedForm, DepthOneAtNonPositiveInteger) {
  // at -n the correction is B*_{n+1}/(n+1)! (s)_n
  PrecisionScope scope(30);
  MComplex s(MFloat("-0.7"), MFloat("0.2"));
  MComplex z = zeta({s}, 14);
  MComplex c0 = zeta_reg_closed_form({0}, {s}, 12, false);
  EXPECT_LT(abs(c0 - (z - MComplex(MFloat("0.5")))), MFloat("1e-12"));
  MComplex c1 = zeta_reg_closed_form({-1}, {s}, 12, false);
  EXPECT_LT(abs(c1 - (z - MComplex(Rational(1, 12)) * s)), MFloat("1e-12"));
}

TEST(ClosedForm, OriginDoubleExample) {
  PrecisionScope scope(30);
  MVector s{MComplex(MFloat("0.3"), MFloat("0.1")), MComplex(MFloat("-0.4"))};
  MComplex lhs = zeta_reg_closed_form({0, 0}, s, 12, false);
  MComplex one(1);
  MComplex rhs = zeta(s, 14) - MComplex(Rational(1, 2)) * zeta({s[1]}, 14) +
                 MComplex(Rational(1, 12)) * (s[1] / (s[0] + s[1]) + (s[0] + s[1] - one) / (s[1] - one)) +
                 MComplex(Rational(1, 4));
  EXPECT_LT(abs(lhs - rhs), MFloat("1e-12"));
}

TEST(RegSeries, Examples) {
  PrecisionScope scope(40);
  auto g = reg_series({1}, 0, 12, false);
  ASSERT_EQ(g.coefficients.size(), 1u);
  EXPECT_LT(bm::abs(g.coefficients.at({0}) - euler_gamma()), MFloat("1e-12"));

  auto z = reg_series({2}, 1, 12, false);
  MFloat d1;
  {
    PrecisionScope hi(60);
    d1 = oracle::zeta_derivative(MFloat(2), 1);
  }
  EXPECT_LT(bm::abs(z.coefficients.at({0}) - oracle::zeta(MFloat(2))), MFloat("1e-12"));
  EXPECT_LT(bm::abs(z.coefficients.at({1}) - d1), MFloat("1e-10"));

  auto e = reg_series({}, 5, 12, false);
  ASSERT_EQ(e.coefficients.size(), 1u);
  EXPECT_EQ(e.coefficients.at({}), MFloat(1));
}

TEST(EvalReg, AtCenter) {
  PrecisionScope scope(40);
  auto s1 = reg_series({1}, 3, 12, false);
  EXPECT_EQ(eval_reg(s1, {MComplex(1)}).value, MComplex(s1.coefficients.at({0})));
  auto s2 = reg_series({1, 1}, 2, 10, false);
  EXPECT_EQ(eval_reg(s2, {MComplex(1), MComplex(1)}).value, MComplex(s2.coefficients.at({0, 0})));
}

TEST(EvalReg, RiemannNearOne) {
  PrecisionScope scope(40);
  unsigned saved = limits().degree_cap.load();
  limits().degree_cap = 12;
  auto series = reg_series({1}, 12, 14, false);
  limits().degree_cap = saved;
  MComplex s(MFloat("1.1"));
  auto ev = eval_reg(series, {s});
  MFloat want = oracle::zeta(MFloat("1.1")) - 1 / MFloat("0.1");
  EXPECT_LT(abs(ev.value - MComplex(want)), MFloat("1e-9"));
  EXPECT_FALSE(ev.divergence_warning);
}

TEST(EvalReg, DivergenceWarning) {
  RegSeries fake;
  fake.center = IntPoint({0});
  fake.degree = 3;
  for (unsigned k = 0; k <= 3; ++k) fake.coefficients[{k}] = 1;
  PrecisionScope scope(20);
  EXPECT_TRUE(eval_reg(fake, {MComplex(3)}).divergence_warning);
  EXPECT_FALSE(eval_reg(fake, {MComplex(MFloat("0.1"))}).divergence_warning);
}

TEST(StieltjesConstant, IndependentOfCallHistory) {
  // a higher-precision result computed first must not leak into a lower-precision request
  stieltjes_constant({1, 2}, {1, 0}, 20, false);
  auto cached = stieltjes_constant({1, 2}, {1, 0}, 10, false);
  auto fresh = detail::extrapolated_constant({1, 2}, {1, 0}, 10, false);
  EXPECT_EQ(cached.value, fresh.value);
  EXPECT_EQ(cached.est_error, fresh.est_error);
}
