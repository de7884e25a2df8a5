#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mgg/operators.hpp"
#include "oracles.hpp"

using namespace mgg;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

// a = cot(tau) = sqrt(2), b = 1
double tau_b1() { return std::atan2(1.0, sqrt2); }

OperatorParams lq_b1(int n, double C0) { return OperatorParams::from_tau(tau_b1(), n, C0); }

}  // namespace

TEST(Params, RegimeDispatchAndConstants) {
  EXPECT_EQ(OperatorParams::from_tau(0.0, 3, 0.0).regime, Regime::MongeAmpere);
  const auto ih = OperatorParams::from_tau(pi / 4, 3, -1.0);
  EXPECT_EQ(ih.regime, Regime::InverseHarmonic);
  EXPECT_EQ(ih.a, 1.0);
  EXPECT_EQ(ih.b, 0.0);
  EXPECT_EQ(OperatorParams::from_tau(pi / 2, 3, 0.0).regime, Regime::SpecialLagrangian);

  const auto lq = lq_b1(3, -1.0);
  EXPECT_EQ(lq.regime, Regime::LogQuotient);
  EXPECT_NEAR(lq.a, sqrt2, 1e-15);
  EXPECT_NEAR(lq.b, 1.0, 1e-15);
  EXPECT_NEAR(lq.c0, std::exp(2.0 * lq.b * -1.0 / std::sqrt(lq.a * lq.a + 1.0)), 1e-15);

  const auto at = OperatorParams::from_tau(pi / 3, 3, 0.0);
  EXPECT_EQ(at.regime, Regime::ArcTanShifted);
  EXPECT_NEAR(at.a, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(at.b, std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_TRUE(std::isnan(at.c0));

  EXPECT_THROW(OperatorParams::from_tau(2.0, 3, 0.0), InvalidInput);
  EXPECT_THROW(OperatorParams::of(Regime::LogQuotient, 3, 0.0), InvalidInput);
  EXPECT_EQ(regime_from_string("SL"), Regime::SpecialLagrangian);
  EXPECT_EQ(regime_from_string("LogQuotient"), Regime::LogQuotient);
}

TEST(Params, LevelConstantBelowOneIffLevelNegative) {
  EXPECT_LT(lq_b1(3, -0.5).c0, 1.0);
  EXPECT_GT(lq_b1(3, -0.5).c0, 0.0);
  EXPECT_GE(lq_b1(3, 0.5).c0, 1.0);
}

TEST(EvalG, FrozenValues) {
  EXPECT_NEAR(eval_G(OperatorParams::of(Regime::MongeAmpere, 2, 0.0), Spectrum{2.0, 2.0}),
              std::log(2.0), 1e-15);
  EXPECT_NEAR(eval_G(OperatorParams::of(Regime::SpecialLagrangian, 3, 0.0), Spectrum{1, 1, 1}),
              3 * pi / 4, 1e-15);
  EXPECT_NEAR(eval_G(OperatorParams::of(Regime::InverseHarmonic, 3, 0.0), Spectrum{1, 2, 2}),
              -2 * sqrt2, 1e-15);
  EXPECT_NEAR(eval_G(lq_b1(3, 0.0), Spectrum{1, 1, 1}),
              1.5 * std::sqrt(3.0) * std::log(1.0 / 3.0), 1e-14);
}

TEST(EvalG, DomainGates) {
  EXPECT_THROW(eval_G(lq_b1(3, 0.0), Spectrum{0.0, 1, 1}), DomainViolation);
  EXPECT_THROW(eval_G(OperatorParams::of(Regime::MongeAmpere, 3, 0.0), Spectrum{-1, 1, 1}),
               DomainViolation);
  EXPECT_THROW(eval_G(OperatorParams::of(Regime::InverseHarmonic, 3, 0.0), Spectrum{0, 1, 1}),
               DomainViolation);
  EXPECT_NO_THROW(eval_G(OperatorParams::of(Regime::SpecialLagrangian, 3, 0.0), Spectrum{-5, 0, 1}));
  EXPECT_THROW(eval_G(lq_b1(3, 0.0), Spectrum{1, 1}), InvalidInput);
}

TEST(EvalG, StrictlyIncreasingInEachEigenvalue) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  const std::vector<OperatorParams> ps{lq_b1(4, 0.0), OperatorParams::of(Regime::InverseHarmonic, 4, 0.0),
                                       OperatorParams::from_tau(pi / 3, 4, 0.0),
                                       OperatorParams::of(Regime::SpecialLagrangian, 4, 0.0),
                                       OperatorParams::of(Regime::MongeAmpere, 4, 0.0)};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& p = ps[static_cast<std::size_t>(trial) % ps.size()];
    std::vector<double> l(4);
    for (double& x : l) x = u(rng);
    const std::size_t i = static_cast<std::size_t>(trial) % 4;
    const double h = 1e-6;
    auto lp = l;
    auto lm = l;
    lp[i] += h;
    lm[i] -= h;
    EXPECT_GT(eval_G(p, Spectrum(lp)) - eval_G(p, Spectrum(lm)), 0.0);
  }
}

TEST(EvalG, PermutationInvariant) {
  const auto p = lq_b1(4, 0.0);
  EXPECT_DOUBLE_EQ(eval_G(p, Spectrum{3, 1, 2, 0.5}), eval_G(p, Spectrum{0.5, 2, 3, 1}));
}

TEST(EvalF, FrozenValues) {
  EXPECT_EQ(eval_F(OperatorParams::of(Regime::SpecialLagrangian, 3, 0.0), Spectrum{0, 0, 0}), 0.0);
  const auto at = OperatorParams::with_constants(Regime::ArcTanShifted, sqrt2, 1.0, 3, 0.0);
  const double l = 1.0 - sqrt2;
  EXPECT_NEAR(eval_F(at, Spectrum{l, l, l}), 0.0, 1e-15);

  // F at (1 - a + b) equals G at the translated spectrum (1, 1, 1).
  const auto lq = lq_b1(3, 0.0);
  const double shifted = 1.0 - lq.a + lq.b;
  EXPECT_NEAR(eval_F(lq, Spectrum{shifted, shifted, shifted}), eval_G(lq, Spectrum{1, 1, 1}), 1e-13);
  EXPECT_THROW(eval_F(lq, Spectrum{lq.b - lq.a, 1, 1}), DomainViolation);
}

TEST(Translate, FrozenValues) {
  const auto ih = translate_spectrum(OperatorParams::of(Regime::InverseHarmonic, 3, 0.0), Spectrum{0, 1, 2});
  EXPECT_EQ(ih[0], 1.0);
  EXPECT_EQ(ih[2], 3.0);
  const auto lq = translate_spectrum(lq_b1(3, 0.0), Spectrum{1, 1, 1});
  EXPECT_NEAR(lq[0], sqrt2, 1e-15);
  const auto at = translate_spectrum(OperatorParams::with_constants(Regime::ArcTanShifted, sqrt2, 1.0, 3, 0.0),
                                     Spectrum{-sqrt2, 0, sqrt2});
  EXPECT_NEAR(at[0], 0.0, 1e-15);
  EXPECT_NEAR(at[1], sqrt2, 1e-15);
  EXPECT_NEAR(at[2], 2 * sqrt2, 1e-15);
  EXPECT_THROW(translate_spectrum(OperatorParams::of(Regime::SpecialLagrangian, 3, 0.0), Spectrum{1, 1, 1}),
               RegimeMismatch);
}

TEST(Translate, FEqualsGOfTranslatedOnRandomSpectra) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tau_lq(0.05, pi / 4 - 0.05);
  std::uniform_real_distribution<double> tau_at(pi / 4 + 0.05, pi / 2 - 0.05);
  std::uniform_real_distribution<double> off(0.05, 6.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int kind = trial % 3;
    OperatorParams p = kind == 0   ? OperatorParams::from_tau(tau_lq(rng), 4, 0.0)
                       : kind == 1 ? OperatorParams::of(Regime::InverseHarmonic, 4, 0.0)
                                   : OperatorParams::from_tau(tau_at(rng), 4, 0.0);
    std::vector<double> l(4);
    for (double& x : l) {
      // keep the translated values inside each G domain
      x = kind == 0 ? p.b - p.a + off(rng) : kind == 1 ? -1.0 + off(rng) : -p.a - p.b + off(rng);
    }
    const Spectrum s(l);
    const double f = eval_F(p, s);
    const double g = eval_G(p, translate_spectrum(p, s));
    worst = std::max(worst, std::abs(f - g) / std::max(1.0, std::abs(g)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(ArctanIdentity, FrozenAndExtendedPrecision) {
  const double l0 = 1.0 - sqrt2;
  EXPECT_LT(check_arctan_identity(sqrt2, 1.0, Spectrum{l0, l0, l0}), 1e-15);

  // Both sides in long double.
  const long double a = std::sqrt(2.0L);
  const long double b = 1.0L;
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  for (long double l : {0.0L, 1.0L, 5.0L}) {
    lhs += std::atan((l + a - b) / (l + a + b));
    rhs += std::atan((l + a) / b);
  }
  rhs -= 3.0L * std::numbers::pi_v<long double> / 4.0L;
  EXPECT_LT(std::abs(static_cast<double>(lhs - rhs)), 1e-15);
  EXPECT_LT(check_arctan_identity(sqrt2, 1.0, Spectrum{0, 1, 5}), 1e-12);

  EXPECT_THROW(check_arctan_identity(2.0, std::sqrt(3.0), Spectrum{-3.8, 0, 0}), DomainViolation);
}

TEST(ArctanIdentity, RandomTriples) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ab(0.05, 4.0);
  std::uniform_real_distribution<double> off(1e-3, 20.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = ab(rng);
    const double b = ab(rng);
    std::vector<double> l(5);
    for (double& x : l) x = -a - b + off(rng);
    worst = std::max(worst, check_arctan_identity(a, b, Spectrum(l)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(IsotropicRoot, SpecialLagrangian) {
  const auto r = isotropic_root(OperatorParams::of(Regime::SpecialLagrangian, 3, 3 * pi / 4));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.value, std::tan(pi / 4), 1e-10);
  EXPECT_TRUE(r.closed_form_consistent);
  EXPECT_THROW(isotropic_root(OperatorParams::of(Regime::SpecialLagrangian, 3, 1.6 * pi)), Unattainable);
}

TEST(IsotropicRoot, LogQuotient) {
  const double C0 = 1.5 * std::sqrt(3.0) * std::log(1.0 / 3.0);
  const auto p = lq_b1(3, C0);
  const auto r = isotropic_root(p);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
  EXPECT_NEAR(r.value, r.closed_form, 1e-10);
  EXPECT_LT(r.residual, 1e-12);
  EXPECT_THROW(isotropic_root(lq_b1(3, 0.1)), Unattainable);
}

TEST(IsotropicRoot, InverseHarmonicPrintedFormDisagrees) {
  const auto p = OperatorParams::of(Regime::InverseHarmonic, 3, -3 * sqrt2);
  const auto r = isotropic_root(p);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.value, -sqrt2 * 3 / p.C0, 1e-12);
  EXPECT_LT(r.residual, 1e-12);
  // printed -sqrt2 C0 / (2n) = 1 here as well, since C0^2 = 2 n^2 = 18
  EXPECT_TRUE(r.closed_form_consistent);

  const auto q = OperatorParams::of(Regime::InverseHarmonic, 3, -1.0);
  const auto rq = isotropic_root(q);
  EXPECT_NEAR(rq.value, 3 * sqrt2, 1e-12);
  EXPECT_NEAR(rq.closed_form, sqrt2 / 6, 1e-15);
  EXPECT_FALSE(rq.closed_form_consistent);

  const auto pos = isotropic_root(OperatorParams::of(Regime::InverseHarmonic, 3, 2.0));
  EXPECT_LT(pos.value, 0.0);
  EXPECT_LT(pos.residual, 1e-12);
  EXPECT_THROW(isotropic_root(OperatorParams::of(Regime::InverseHarmonic, 3, 0.0)), Unattainable);
}

TEST(IsotropicRoot, ArcTanShiftedAndMongeAmpere) {
  const auto at = OperatorParams::from_tau(pi / 3, 4, 0.3);
  const auto r = isotropic_root(at);
  EXPECT_NEAR(r.value, r.closed_form, 1e-10);
  EXPECT_LT(r.residual, 1e-12);
  const auto ma = isotropic_root(OperatorParams::of(Regime::MongeAmpere, 3, 0.4));
  EXPECT_NEAR(ma.value, std::exp(0.4), 1e-12);
}

TEST(IsotropicRoot, RightInverseOnRandomLevels) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 4;
    OperatorParams p;
    switch (trial % 4) {
      case 0: p = lq_b1(n, -u(rng) * 5.0); break;
      case 1: p = OperatorParams::of(Regime::InverseHarmonic, n, -u(rng) * 10.0); break;
      case 2: p = OperatorParams::of(Regime::SpecialLagrangian, n, (2 * u(rng) - 1) * n * pi / 2); break;
      default: {
        const auto base = OperatorParams::from_tau(pi / 3, n, 0.0);
        const double k = base.branch_scale() * n;
        p = OperatorParams::from_tau(pi / 3, n, (-0.75 + u(rng)) * pi * k);
      }
    }
    const auto r = isotropic_root(p);
    EXPECT_LT(std::abs(eval_G(p, Spectrum::constant(n, r.value)) - p.C0), 1e-12) << trial;
    if (p.regime != Regime::InverseHarmonic) {
      EXPECT_LT(oracle::rel_err(r.value, r.closed_form), 1e-10) << trial;
    }
  }
}
