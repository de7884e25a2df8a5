#pragma once

// Elementary symmetric polynomials, the algebraic form of the arctan-sum
// equation and the decay exponent delta0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "mgg/errors.hpp"
#include "mgg/operators.hpp"

namespace mgg {

/// sigma_k(base) for k = 0..n and sigma_{k;i}(base) (index i removed) for
/// k = 0..n-1.
class SigmaTable {
 public:
  explicit SigmaTable(std::span<const double> base) : base_(base.begin(), base.end()) {
    const std::size_t n = base_.size();
    sigma_.assign(n + 1, 0.0);
    sigma_[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k >= 1; --k) sigma_[k] += base_[j] * sigma_[k - 1];
    }
    excl_.assign(n * std::max<std::size_t>(n, 1), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      excl_[i] = 1.0;
      for (std::size_t k = 1; k < n; ++k) {
        excl_[k * n + i] = sigma_[k] - base_[i] * excl_[(k - 1) * n + i];
      }
    }
  }

  std::size_t n() const { return base_.size(); }
  std::span<const double> base() const { return base_; }
  std::span<const double> sigma() const { return sigma_; }

  /// sigma_k; zero outside 0..n.
  double sigma(int k) const {
    if (k < 0 || k > static_cast<int>(n())) return 0.0;
    return sigma_[static_cast<std::size_t>(k)];
  }

  /// sigma_{k;i}; zero for k < 0 or k >= n.
  double sigma_excl(int k, std::size_t i) const {
    if (k < 0 || k >= static_cast<int>(n())) return 0.0;
    return excl_[static_cast<std::size_t>(k) * n() + i];
  }

 private:
  std::vector<double> base_;
  std::vector<double> sigma_;
  std::vector<double> excl_;  // row k, column i
};

inline SigmaTable sigma_table(std::span<const double> base) { return SigmaTable(base); }

/// c_k(C) for k = 0..n: c_{2j} = (-1)^{j+1} sin C, c_{2j+1} = (-1)^j cos C.
inline std::vector<double> ck_coefficients(double C, int n) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const int j = k / 2;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(k)] = (k % 2 == 0) ? -sign * std::sin(C) : sign * std::cos(C);
  }
  return c;
}

struct XiBound {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
};

/// Extremes over directions of
///   Xi_k(l, x) = sum sigma_{k-1;i} l_i^2 x_i^2 / (sigma_k sum l_i x_i^2).
/// In t_i = x_i^2 this is a ratio of linear forms, so the extremes sit at
/// coordinate directions: l_i sigma_{k-1;i} / sigma_k. Entry k-1 holds k.
inline std::vector<XiBound> xi_bounds(std::span<const double> lambdaA) {
  for (double l : lambdaA) {
    if (!(l > 0.0)) throw DomainViolation("xi bounds need positive eigenvalues");
  }
  const SigmaTable t(lambdaA);
  const std::size_t n = t.n();
  std::vector<XiBound> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    XiBound& xb = out[k - 1];
    for (std::size_t i = 0; i < n; ++i) {
      const double v = lambdaA[i] * t.sigma_excl(static_cast<int>(k) - 1, i) /
                       t.sigma(static_cast<int>(k));
      if (i == 0 || v < xb.lower) {
        xb.lower = v;
        xb.argmin = i;
      }
      if (i == 0 || v > xb.upper) {
        xb.upper = v;
        xb.argmax = i;
      }
    }
  }
  return out;
}

/// Direct evaluation of Xi_k at a direction x (k >= 1).
inline double xi_value(std::span<const double> lambdaA, int k, std::span<const double> x) {
  const SigmaTable t(lambdaA);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < t.n(); ++i) {
    num += t.sigma_excl(k - 1, i) * lambdaA[i] * lambdaA[i] * x[i] * x[i];
    den += lambdaA[i] * x[i] * x[i];
  }
  return num / (t.sigma(k) * den);
}

struct DecayExponent {
  double delta0 = 0.0;
  Regime regime = Regime::LogQuotient;
  bool admissible = false;  // delta0 > 2
  double level_defect = 0.0;  // |G(lambda(A)) - C0|; above 1e-8 means A is off the level set

  // Quotient-formula intermediates (ArcTanShifted, SpecialLagrangian).
  double quotient_argument = 0.0;
  std::vector<double> ck;
  std::vector<double> xi;
  std::vector<double> sigma;
};

/// delta0 for the regime: the LogQuotient sum, the InverseHarmonic sigma
/// ratio, and the c_k / xi_k quotient for ArcTanShifted and SpecialLagrangian.
inline DecayExponent delta0(const OperatorParams& p, std::span<const double> lambdaA) {
  if (p.regime == Regime::MongeAmpere) throw Unsupported("no delta0 formula for tau = 0");
  for (double l : lambdaA) {
    if (!(l > 0.0)) throw DomainViolation("delta0 needs positive eigenvalues");
  }
  DecayExponent out;
  out.regime = p.regime;
  const Spectrum spec(std::vector<double>(lambdaA.begin(), lambdaA.end()));
  out.level_defect = std::abs(eval_G(p, spec) - p.C0);
  const double lmin = spec.min();

  switch (p.regime) {
    case Regime::LogQuotient: {
      double d = 0.0;
      for (double l : lambdaA) d += (lmin + 2.0 * p.b) / (l + 2.0 * p.b);
      out.delta0 = d;
      break;
    }
    case Regime::InverseHarmonic: {
      const SigmaTable t(lambdaA);
      const int n = static_cast<int>(t.n());
      out.delta0 = t.sigma(n - 1) * lmin / t.sigma(n);
      break;
    }
    case Regime::ArcTanShifted:
    case Regime::SpecialLagrangian: {
      const int n = static_cast<int>(lambdaA.size());
      const double C = p.regime == Regime::SpecialLagrangian
                           ? p.C0
                           : n * std::numbers::pi / 4 + p.b * p.C0 / std::sqrt(p.a * p.a + 1.0);
      const SigmaTable t(lambdaA);
      const auto bounds = xi_bounds(lambdaA);
      out.quotient_argument = C;
      out.ck = ck_coefficients(C, n);
      out.sigma.assign(t.sigma().begin(), t.sigma().end());
      out.xi.assign(static_cast<std::size_t>(n) + 1, 0.0);
      double num = 0.0;
      double den = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double ck = out.ck[static_cast<std::size_t>(k)];
        double xi = 0.0;  // Xi_0 vanishes (sigma_{-1} = 0)
        if (k >= 1) {
          const XiBound& xb = bounds[static_cast<std::size_t>(k) - 1];
          xi = ck > 0.0 ? xb.upper : xb.lower;
        }
        out.xi[static_cast<std::size_t>(k)] = xi;
        num += k * ck * t.sigma(k);
        den += xi * ck * t.sigma(k);
      }
      out.delta0 = num / den;
      break;
    }
    case Regime::MongeAmpere: break;
  }
  out.admissible = out.delta0 > 2.0;
  return out;
}

/// cos C0 sum (-1)^k sigma_{2k+1} - sin C0 sum (-1)^k sigma_{2k}; vanishes
/// when sum atan(l_i) = C0 (mod pi).
inline double arctan_algebraic_form(double C0, const Spectrum& spec) {
  const SigmaTable t(spec.values());
  const int n = static_cast<int>(t.n());
  double odd = 0.0;
  double even = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      even += sign * t.sigma(k);
    } else {
      odd += sign * t.sigma(k);
    }
  }
  return std::cos(C0) * odd - std::sin(C0) * even;
}

}  // namespace mgg
