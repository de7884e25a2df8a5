#pragma once

// Operator family of the minimal gradient graph equations: the original
// F-form, the translated G-form, the translation between them and the
// isotropic quadratic roots of G = C0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgg/detail/roots.hpp"
#include "mgg/errors.hpp"

namespace mgg {

enum class Regime {
  MongeAmpere,        // tau = 0
  LogQuotient,        // 0 < tau < pi/4
  InverseHarmonic,    // tau = pi/4
  ArcTanShifted,      // pi/4 < tau < pi/2
  SpecialLagrangian,  // tau = pi/2
};

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::MongeAmpere: return "MongeAmpere";
    case Regime::LogQuotient: return "LogQuotient";
    case Regime::InverseHarmonic: return "InverseHarmonic";
    case Regime::ArcTanShifted: return "ArcTanShifted";
    case Regime::SpecialLagrangian: return "SpecialLagrangian";
  }
  return "?";
}

inline Regime regime_from_string(std::string_view s) {
  for (Regime r : {Regime::MongeAmpere, Regime::LogQuotient, Regime::InverseHarmonic,
                   Regime::ArcTanShifted, Regime::SpecialLagrangian}) {
    if (to_string(r) == s) return r;
  }
  if (s == "MA") return Regime::MongeAmpere;
  if (s == "SL") return Regime::SpecialLagrangian;
  throw InvalidInput("unknown regime '" + std::string(s) + "'");
}

/// Regime plus the constants a = cot(tau), b = sqrt|cot^2(tau) - 1|, the
/// dimension and the level C0. `c0` is exp(2 b C0 / sqrt(a^2+1)) and is only
/// meaningful for the LogQuotient regime (NaN otherwise).
struct OperatorParams {
  Regime regime = Regime::SpecialLagrangian;
  double tau = std::numbers::pi / 2;
  double a = 0.0;
  double b = 1.0;
  int n = 3;
  double C0 = 0.0;
  double c0 = std::numeric_limits<double>::quiet_NaN();

  static OperatorParams from_tau(double tau, int n, double C0) {
    constexpr double pi = std::numbers::pi;
    constexpr double snap = 1e-15;
    if (!(tau >= -snap && tau <= pi / 2 + snap)) throw InvalidInput("tau outside [0, pi/2]");
    OperatorParams p;
    p.tau = tau;
    p.n = n;
    p.C0 = C0;
    if (std::abs(tau) <= snap) {
      p.regime = Regime::MongeAmpere;
      p.tau = 0.0;
      p.a = std::numeric_limits<double>::infinity();
      p.b = std::numeric_limits<double>::infinity();
    } else if (std::abs(tau - pi / 4) <= snap) {
      p.regime = Regime::InverseHarmonic;
      p.tau = pi / 4;
      p.a = 1.0;
      p.b = 0.0;
    } else if (std::abs(tau - pi / 2) <= snap) {
      p.regime = Regime::SpecialLagrangian;
      p.tau = pi / 2;
      p.a = 0.0;
      p.b = 1.0;
    } else {
      p.regime = tau < pi / 4 ? Regime::LogQuotient : Regime::ArcTanShifted;
      p.a = 1.0 / std::tan(tau);
      p.b = std::sqrt(std::abs(p.a * p.a - 1.0));
    }
    p.finish();
    return p;
  }

  /// Regimes whose formulas do not involve a, b.
  static OperatorParams of(Regime r, int n, double C0) {
    switch (r) {
      case Regime::MongeAmpere: return from_tau(0.0, n, C0);
      case Regime::InverseHarmonic: return from_tau(std::numbers::pi / 4, n, C0);
      case Regime::SpecialLagrangian: return from_tau(std::numbers::pi / 2, n, C0);
      default: throw InvalidInput("regime needs a and b; use from_tau or with_constants");
    }
  }

  /// Formula-level constructor: takes a, b as given without tying them to a
  /// tau. Used to evaluate the branch formulas at arbitrary (a, b) > 0.
  static OperatorParams with_constants(Regime r, double a, double b, int n, double C0) {
    if (r != Regime::LogQuotient && r != Regime::ArcTanShifted) return of(r, n, C0);
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("a and b must be positive");
    OperatorParams p;
    p.regime = r;
    p.tau = std::atan2(1.0, a);
    p.a = a;
    p.b = b;
    p.n = n;
    p.C0 = C0;
    p.finish();
    return p;
  }

  /// sqrt(a^2+1)/(2b) for LogQuotient, sqrt(a^2+1)/b for ArcTanShifted.
  double branch_scale() const {
    switch (regime) {
      case Regime::LogQuotient: return std::sqrt(a * a + 1.0) / (2.0 * b);
      case Regime::ArcTanShifted: return std::sqrt(a * a + 1.0) / b;
      default: return 1.0;
    }
  }

 private:
  void finish() {
    if (n < 1) throw InvalidInput("dimension must be positive");
    if (regime == Regime::LogQuotient) c0 = std::exp(2.0 * b * C0 / std::sqrt(a * a + 1.0));
  }
};

/// Eigenvalues stored in ascending order.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }
  Spectrum(std::initializer_list<double> values) : Spectrum(std::vector<double>(values)) {}

  static Spectrum constant(int n, double value) {
    return Spectrum(std::vector<double>(static_cast<std::size_t>(n), value));
  }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

namespace detail {

inline void check_size(const OperatorParams& p, const Spectrum& spec) {
  if (spec.size() != static_cast<std::size_t>(p.n)) {
    throw InvalidInput("spectrum length " + std::to_string(spec.size()) +
                       " does not match n = " + std::to_string(p.n));
  }
}

/// Single-eigenvalue term of G (G is the sum over the spectrum) and its
/// derivative.
inline double g_term(const OperatorParams& p, double l) {
  switch (p.regime) {
    case Regime::MongeAmpere: return std::log(l) / p.n;
    case Regime::LogQuotient: return p.branch_scale() * std::log(l / (l + 2.0 * p.b));
    case Regime::InverseHarmonic: return -std::numbers::sqrt2 / l;
    case Regime::ArcTanShifted: return p.branch_scale() * (std::atan(l) - std::numbers::pi / 4);
    case Regime::SpecialLagrangian: return std::atan(l);
  }
  return 0.0;
}

inline double g_term_derivative(const OperatorParams& p, double l) {
  switch (p.regime) {
    case Regime::MongeAmpere: return 1.0 / (p.n * l);
    case Regime::LogQuotient: return p.branch_scale() * 2.0 * p.b / (l * (l + 2.0 * p.b));
    case Regime::InverseHarmonic: return std::numbers::sqrt2 / (l * l);
    case Regime::ArcTanShifted: return p.branch_scale() / (1.0 + l * l);
    case Regime::SpecialLagrangian: return 1.0 / (1.0 + l * l);
  }
  return 0.0;
}

inline bool in_g_domain(const OperatorParams& p, double l) {
  switch (p.regime) {
    case Regime::MongeAmpere:
    case Regime::LogQuotient: return l > 0.0;
    case Regime::InverseHarmonic: return l != 0.0;
    default: return std::isfinite(l);
  }
}

}  // namespace detail

/// G_tau on a spectrum.
inline double eval_G(const OperatorParams& p, const Spectrum& spec) {
  detail::check_size(p, spec);
  double sum = 0.0;
  for (double l : spec.values()) {
    if (!detail::in_g_domain(p, l)) {
      throw DomainViolation("eigenvalue " + std::to_string(l) + " outside the " +
                            std::string(to_string(p.regime)) + " domain");
    }
    sum += detail::g_term(p, l);
  }
  return sum;
}

/// F_tau, the operator before translation.
inline double eval_F(const OperatorParams& p, const Spectrum& spec) {
  detail::check_size(p, spec);
  const double a = p.a;
  const double b = p.b;
  double sum = 0.0;
  for (double l : spec.values()) {
    switch (p.regime) {
      case Regime::MongeAmpere:
        if (!(l > 0.0)) throw DomainViolation("eigenvalue must be positive");
        sum += std::log(l) / p.n;
        break;
      case Regime::LogQuotient:
        if (!(l + a - b > 0.0)) throw DomainViolation("eigenvalue must exceed b - a");
        sum += std::log((l + a - b) / (l + a + b));
        break;
      case Regime::InverseHarmonic:
        if (l == -1.0) throw DomainViolation("eigenvalue -1 is a pole");
        sum += -std::numbers::sqrt2 / (1.0 + l);
        break;
      case Regime::ArcTanShifted:
        if (l + a + b == 0.0) throw DomainViolation("eigenvalue -(a+b) is a pole");
        sum += std::atan((l + a - b) / (l + a + b));
        break;
      case Regime::SpecialLagrangian:
        sum += std::atan(l);
        break;
    }
  }
  if (p.regime == Regime::LogQuotient || p.regime == Regime::ArcTanShifted) {
    sum *= p.branch_scale();
  }
  return sum;
}

/// Maps an F-form spectrum to the G-form spectrum of the translated function.
inline Spectrum translate_spectrum(const OperatorParams& p, const Spectrum& spec) {
  std::vector<double> out(spec.values().begin(), spec.values().end());
  switch (p.regime) {
    case Regime::LogQuotient:
      for (double& l : out) l += p.a - p.b;
      break;
    case Regime::InverseHarmonic:
      for (double& l : out) l += 1.0;
      break;
    case Regime::ArcTanShifted:
      for (double& l : out) l = (l + p.a) / p.b;
      break;
    default:
      throw RegimeMismatch("translation is the identity for " + std::string(to_string(p.regime)));
  }
  return Spectrum(std::move(out));
}

/// |sum atan((l+a-b)/(l+a+b)) - (sum atan((l+a)/b) - n pi/4)|.
inline double check_arctan_identity(double a, double b, const Spectrum& spec) {
  if (!(b > 0.0)) throw DomainViolation("b must be positive");
  double lhs = 0.0;
  double rhs = 0.0;
  for (double l : spec.values()) {
    if (!(l > -a - b)) throw DomainViolation("eigenvalue must exceed -a-b");
    lhs += std::atan((l + a - b) / (l + a + b));
    rhs += std::atan((l + a) / b);
  }
  rhs -= static_cast<double>(spec.size()) * std::numbers::pi / 4;
  return std::abs(lhs - rhs);
}

inline double check_arctan_identity(const OperatorParams& p, const Spectrum& spec) {
  return check_arctan_identity(p.a, p.b, spec);
}

struct IsotropicRoot {
  double value = 0.0;        // root-solved lambda*
  double closed_form = 0.0;  // printed closed form
  double residual = 0.0;     // |G(lambda* 1) - C0|
  bool closed_form_consistent = true;  // printed form satisfies G = C0 to 1e-10
};

/// Printed closed form of the isotropic root; for InverseHarmonic this is
/// -sqrt(2) C0 / (2n), which solves G = C0 only when C0^2 = 2 n^2.
inline double isotropic_closed_form(const OperatorParams& p) {
  const double n = p.n;
  switch (p.regime) {
    case Regime::MongeAmpere: return std::exp(p.C0);
    case Regime::LogQuotient: {
      const double q = std::exp(2.0 * p.b * p.C0 / (n * std::sqrt(p.a * p.a + 1.0)));
      return 2.0 * p.b / (1.0 - q) - 2.0 * p.b;
    }
    case Regime::InverseHarmonic: return -std::numbers::sqrt2 * p.C0 / (2.0 * n);
    case Regime::ArcTanShifted:
      return std::tan(p.b * p.C0 / (n * std::sqrt(p.a * p.a + 1.0)) + std::numbers::pi / 4);
    case Regime::SpecialLagrangian: return std::tan(p.C0 / n);
  }
  return 0.0;
}

/// Solves G(l, ..., l) = C0 by bracketing and safeguarded Newton.
inline IsotropicRoot isotropic_root(const OperatorParams& p) {
  constexpr double pi = std::numbers::pi;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double n = p.n;
  const double C0 = p.C0;
  double dom_lo = -inf;
  double dom_hi = inf;
  double start = 1.0;
  switch (p.regime) {
    case Regime::MongeAmpere:
      dom_lo = 0.0;
      break;
    case Regime::LogQuotient:
      if (!(C0 < 0.0)) throw Unattainable("LogQuotient level must be negative");
      dom_lo = 0.0;
      break;
    case Regime::InverseHarmonic:
      if (C0 == 0.0) throw Unattainable("InverseHarmonic level must be nonzero");
      if (C0 < 0.0) {
        dom_lo = 0.0;
      } else {
        dom_hi = 0.0;
        start = -1.0;
      }
      break;
    case Regime::ArcTanShifted: {
      const double k = p.branch_scale() * n;
      if (!(C0 > -0.75 * pi * k && C0 < 0.25 * pi * k)) throw Unattainable("level outside range");
      break;
    }
    case Regime::SpecialLagrangian:
      if (!(std::abs(C0) < 0.5 * pi * n)) throw Unattainable("level outside (-n pi/2, n pi/2)");
      break;
  }
  auto f = [&](double l) { return n * detail::g_term(p, l) - C0; };
  auto df = [&](double l) { return n * detail::g_term_derivative(p, l); };
  auto [lo, hi] = detail::expand_bracket(f, dom_lo, dom_hi, start);

  IsotropicRoot out;
  out.value = detail::safeguarded_newton(f, df, lo, hi);
  out.residual = std::abs(eval_G(p, Spectrum::constant(p.n, out.value)) - C0);
  out.closed_form = isotropic_closed_form(p);
  out.closed_form_consistent =
      detail::in_g_domain(p, out.closed_form) &&
      std::abs(eval_G(p, Spectrum::constant(p.n, out.closed_form)) - C0) <= 1e-10;
  return out;
}

}  // namespace mgg
