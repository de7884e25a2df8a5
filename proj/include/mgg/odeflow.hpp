#pragma once

// Radial ODE machinery for generalized-symmetric sub- and exact solutions.
//
// With psi = U', the LogQuotient subsolution ODE reads
//   psi'(s) = g(psi) / (s + 1),
//   g(psi)  = -(psi^n - c0 prod (psi + 2b/a_i)) / (2 (psi^{n-1} - c0 prod_{i>=2} (psi + 2b/a_i))).
// In t = ln(1+s) it is autonomous. We integrate w = ln(psi - 1), for which
//   dw/dt = g(1 + e^w) / e^w,
// tends to g'(1) = -delta0/2 at the tail and keeps relative precision of
// psi - 1 all the way down. The exact isotropic equation psi' = g(psi)/s is
// the same flow in t = ln s.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mgg/detail/hermite.hpp"
#include "mgg/errors.hpp"
#include "mgg/operators.hpp"
#include "mgg/sympoly.hpp"

namespace mgg {

struct Controls {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_dt = 0.02;          // cap on steps in t; bounds dense-output error
  double tail_threshold = 1e-6;  // psi - 1 below this may hand over to the tail model
  double tail_min_s = 1e6;       // ... but integration always reaches this s
  double mu_tol = 1e-8;
  int max_doublings = 64;
  double s_max = 1e8;  // exact profiles: inward integration start
  double s_min = 1e-6;  // exact profiles: inward integration stop
  std::size_t max_steps = 1'000'000;
};

/// LogQuotient data for the radial construction: sorted a = lambda(A),
/// beta_i = 2b/a_i and c0 = prod a_i/(a_i + 2b).
class GData {
 public:
  static GData make(const OperatorParams& p, std::vector<double> a) {
    if (p.regime != Regime::LogQuotient) throw RegimeMismatch("radial construction is LogQuotient");
    if (p.n < 3) throw InvalidInput("dimension must be at least 3");
    if (a.size() != static_cast<std::size_t>(p.n)) throw InvalidInput("need n eigenvalues");
    std::sort(a.begin(), a.end());
    if (!(a.front() > 0.0)) throw DomainViolation("eigenvalues of A must be positive");
    if (!(p.C0 < 0.0)) throw Unattainable("LogQuotient level must be negative");
    GData gd;
    gd.params_ = p;
    gd.a_ = std::move(a);
    double prod = 1.0;
    double c0 = 1.0;
    for (double ai : gd.a_) {
      const double beta = 2.0 * p.b / ai;
      gd.beta_.push_back(beta);
      prod *= 1.0 + beta;
      c0 *= ai / (ai + 2.0 * p.b);
    }
    if (std::abs(p.c0 * prod - 1.0) > 1e-10) {
      throw Incompatible("c0 prod(1 + 2b/a_i) = " + std::to_string(p.c0 * prod) +
                         ", A is not on the level set G = C0");
    }
    gd.c0_ = c0;
    gd.decay_ = delta0(p, gd.a_);
    return gd;
  }

  /// Takes C0 from the eigenvalues: C0 = G(a).
  static GData from_eigenvalues(double tau, std::vector<double> a) {
    const int n = static_cast<int>(a.size());
    OperatorParams p = OperatorParams::from_tau(tau, n, 0.0);
    p = OperatorParams::from_tau(tau, n, eval_G(p, Spectrum(a)));
    return make(p, std::move(a));
  }

  const OperatorParams& params() const { return params_; }
  std::span<const double> a() const { return a_; }
  int n() const { return params_.n; }
  double c0() const { return c0_; }
  const DecayExponent& decay() const { return decay_; }
  double g_prime_at_one() const { return -0.5 * decay_.delta0; }
  bool isotropic() const { return a_.front() == a_.back(); }

  /// psi^n - c0 prod (psi + beta_i), as a function of phi = psi - 1.
  double numerator_phi(double phi) const {
    const double psi = 1.0 + phi;
    return std::pow(psi, n()) * one_minus_product(phi, 0);
  }

  /// psi^{n-1} - c0 prod_{i>=2} (psi + beta_i).
  double denominator_phi(double phi) const {
    const double psi = 1.0 + phi;
    const double b1 = beta_.front();
    return std::pow(psi, n() - 1) * (b1 + one_minus_product(phi, 1)) / (1.0 + b1);
  }

  double g_phi(double phi) const { return -numerator_phi(phi) / (2.0 * denominator_phi(phi)); }

  double numerator(double psi) const { return numerator_phi(psi - 1.0); }
  double denominator(double psi) const { return denominator_phi(psi - 1.0); }
  double g(double psi) const { return g_phi(psi - 1.0); }

  /// g(1 + phi) / phi, continuous at phi = 0 with value g'(1).
  double ratio(double phi) const {
    if (phi == 0.0) return g_prime_at_one();
    const double psi = 1.0 + phi;
    return -std::pow(psi, n()) * (one_minus_product(phi, 0) / phi) / (2.0 * denominator_phi(phi));
  }

 private:
  // 1 - prod_{i >= first} (psi + beta_i) / (psi (1 + beta_i)), evaluated as
  // -expm1(sum log1p(-eps_i)) with eps_i = phi beta_i / (psi (1 + beta_i)).
  double one_minus_product(double phi, std::size_t first) const {
    const double psi = 1.0 + phi;
    double acc = 0.0;
    for (std::size_t i = first; i < beta_.size(); ++i) {
      acc += std::log1p(-phi * beta_[i] / (psi * (1.0 + beta_[i])));
    }
    return -std::expm1(acc);
  }

  OperatorParams params_;
  std::vector<double> a_;
  std::vector<double> beta_;
  double c0_ = 0.0;
  DecayExponent decay_;
};

/// g of the subsolution IVP; defined for psi >= 1.
inline double g_eval(const GData& gd, double psi) {
  if (!(psi >= 1.0)) throw DomainViolation("g is evaluated for psi >= 1");
  return gd.g(psi);
}

/// Monge-Ampere radial field: (U')^n + 2 s U'' (U')^{n-1} = 1, i.e.
/// psi' = g(psi)/s with g(psi) = (1 - psi^n) / (2 psi^{n-1}).
class MaField {
 public:
  explicit MaField(int n) : n_(n) {}
  int n() const { return n_; }
  double g_prime_at_one() const { return -0.5 * n_; }
  double numerator_phi(double phi) const { return std::expm1(n_ * std::log1p(phi)); }
  double denominator_phi(double phi) const { return std::pow(1.0 + phi, n_ - 1); }
  double g_phi(double phi) const { return -numerator_phi(phi) / (2.0 * denominator_phi(phi)); }
  double ratio(double phi) const {
    if (phi == 0.0) return g_prime_at_one();
    return -(numerator_phi(phi) / phi) / (2.0 * denominator_phi(phi));
  }

 private:
  int n_;
};

/// Numerical U'(s) = psi(s) on a node grid with dense quintic Hermite output
/// in (t, ln(psi - 1)), a power-law tail psi = 1 + kappa s^p beyond the last
/// node and, for profiles built inward, a power-law head psi = H s^q below
/// the first node.
class RadialProfile {
 public:
  enum class Clock {
    Shifted,  // t = ln(1 + s); subsolution profiles, nodes start at s = 0
    Plain,    // t = ln s; exact profiles, nodes start at s_min
  };

  struct Node {
    double s = 0.0;
    double phi = 0.0;     // psi - 1
    double dpsi = 0.0;    // psi'
    double ddpsi = 0.0;   // psi''
    double excess = 0.0;  // U(s) - s - u0 = int_0^s (psi - 1)
  };

  struct Parts {
    Clock clock = Clock::Shifted;
    double alpha = 1.0;  // psi(0) for shifted profiles
    double u0 = 0.0;
    double kappa = 0.0;
    double tail_exponent = -1.5;
    double head_coef = 0.0;
    double head_exponent = -0.5;
    double mu = 0.0;  // int_0^inf (psi - 1)
    std::vector<Node> nodes;
  };

  struct Sample {
    double U = 0.0;
    double psi = 1.0;
    double dpsi = 0.0;
    double ddpsi = 0.0;
    double excess = 0.0;
  };

  RadialProfile() = default;

  static RadialProfile constant(double u0, Clock clock = Clock::Shifted) {
    Parts p;
    p.clock = clock;
    p.u0 = u0;
    return from_parts(std::move(p));
  }

  static RadialProfile from_parts(Parts parts) {
    RadialProfile r;
    r.parts_ = std::move(parts);
    r.finalize();
    return r;
  }

  const Parts& parts() const { return parts_; }
  bool is_constant() const { return parts_.nodes.empty(); }
  double u0() const { return parts_.u0; }
  double mu() const { return parts_.mu; }
  double alpha() const { return parts_.alpha; }
  double kappa() const { return parts_.kappa; }
  double tail_exponent() const { return parts_.tail_exponent; }
  Clock clock() const { return parts_.clock; }
  double s_cut() const { return is_constant() ? 0.0 : parts_.nodes.back().s; }
  double s_head() const { return is_constant() ? 0.0 : parts_.nodes.front().s; }

  /// s + 1 (shifted) or s (plain): ds/dt for the node clock.
  double clock_rate(double s) const { return parts_.clock == Clock::Shifted ? s + 1.0 : s; }

  Sample sample(double s) const {
    Sample out;
    out.U = parts_.u0 + s;
    if (is_constant()) return out;
    const auto& nodes = parts_.nodes;
    double phi = 0.0;
    if (s >= nodes.back().s) {
      const double p = parts_.tail_exponent;
      phi = parts_.kappa * std::pow(s, p);
      out.dpsi = p * phi / s;
      out.ddpsi = p * (p - 1.0) * phi / (s * s);
      out.excess = tail_excess(s);
    } else if (s <= nodes.front().s) {
      if (parts_.clock == Clock::Shifted) {
        const Node& n0 = nodes.front();
        phi = n0.phi;
        out.dpsi = n0.dpsi;
        out.ddpsi = n0.ddpsi;
        out.excess = n0.excess;
      } else {
        // psi = H s^q; the leading power of psi, not of psi - 1
        const double q = parts_.head_exponent;
        if (s <= 0.0) {
          out.psi = std::numeric_limits<double>::infinity();
          return out;
        }
        const double psi = parts_.head_coef * std::pow(s, q);
        phi = psi - 1.0;
        out.dpsi = q * psi / s;
        out.ddpsi = q * (q - 1.0) * psi / (s * s);
        out.excess = s * psi / (q + 1.0) - s;
      }
    } else {
      const double t = time_of(s);
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      const std::size_t k = static_cast<std::size_t>(it - t_.begin()) - 1;
      const detail::Jet w = detail::quintic_hermite(t_[k], w_[k], t_[k + 1], w_[k + 1], t);
      const detail::Jet e = detail::quintic_hermite(t_[k], e_[k], t_[k + 1], e_[k + 1], t);
      const double rate = clock_rate(s);
      phi = std::exp(w.value);
      out.dpsi = phi * w.d1 / rate;
      const double phi_tt = phi * (w.d2 + w.d1 * w.d1);
      out.ddpsi = (phi_tt - out.dpsi * rate) / (rate * rate);
      out.excess = e.value;
    }
    out.psi = 1.0 + phi;
    out.U = parts_.u0 + s + out.excess;
    return out;
  }

  /// U(s) - s - u0.
  double excess(double s) const { return sample(s).excess; }

  /// mu - excess(s) = int_s^inf (psi - 1), formed directly in the tail.
  double remaining(double s) const {
    if (is_constant()) return 0.0;
    if (s >= s_cut()) {
      const double p = parts_.tail_exponent;
      if (!(p < -1.0)) return std::numeric_limits<double>::infinity();
      return parts_.kappa * std::pow(s, p + 1.0) / (-p - 1.0);
    }
    return parts_.mu - excess(s);
  }

  /// lim psi(s) sqrt(2s) as s -> 0: zero for bounded slope, the radial
  /// gradient scale of a conical origin otherwise.
  double cone_radius() const {
    if (is_constant() || parts_.clock == Clock::Shifted) return 0.0;
    const Node& n0 = parts_.nodes.front();
    return (1.0 + n0.phi) * std::sqrt(2.0 * n0.s);
  }

 private:
  double time_of(double s) const {
    return parts_.clock == Clock::Shifted ? std::log1p(s) : std::log(s);
  }

  double tail_excess(double s) const {
    const double p = parts_.tail_exponent;
    if (p < -1.0 && std::isfinite(parts_.mu)) {
      return parts_.mu - parts_.kappa * std::pow(s, p + 1.0) / (-p - 1.0);
    }
    const Node& last = parts_.nodes.back();
    if (p == -1.0) return last.excess + parts_.kappa * std::log(s / last.s);
    return last.excess +
           parts_.kappa * (std::pow(s, p + 1.0) - std::pow(last.s, p + 1.0)) / (p + 1.0);
  }

  void finalize() {
    t_.clear();
    w_.clear();
    e_.clear();
    for (const Node& nd : parts_.nodes) {
      if (!(nd.phi > 0.0)) throw InvalidInput("profile nodes need psi > 1");
      const double rate = clock_rate(nd.s);
      const double phi_t = nd.dpsi * rate;
      const double phi_tt = nd.ddpsi * rate * rate + nd.dpsi * rate;
      const double w1 = phi_t / nd.phi;
      t_.push_back(time_of(nd.s));
      w_.push_back({std::log(nd.phi), w1, phi_tt / nd.phi - w1 * w1});
      e_.push_back({nd.excess, nd.phi * rate, (phi_t + nd.phi) * rate});
    }
    for (std::size_t i = 1; i < t_.size(); ++i) {
      if (!(t_[i] > t_[i - 1])) throw InvalidInput("profile nodes must increase in s");
    }
  }

  Parts parts_;
  std::vector<double> t_;
  std::vector<detail::Jet> w_;
  std::vector<detail::Jet> e_;
};

namespace detail {

struct RawStep {
  double t = 0.0;
  double w = 0.0;
  double e = 0.0;
};

/// d/dw [g(1 + e^w) / e^w] by central differences.
template <class Field>
double ratio_slope(const Field& f, double w) {
  constexpr double h = 1e-5;
  return (f.ratio(std::exp(w + h)) - f.ratio(std::exp(w - h))) / (2.0 * h);
}

/// Integrates (w, e) with w' = ratio(e^w), e' = e^w * ds/dt from t0 towards
/// the stop predicate. dt_sign selects the direction.
template <class Field, class Stop>
std::vector<RawStep> integrate_flow(const Field& field, bool shifted, double t0, double w0,
                                    double dt_sign, const Controls& c, Stop&& stop,
                                    double t_limit) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  auto sys = [&](const State& x, State& dxdt, double t) {
    const double phi = std::exp(x[0]);
    dxdt[0] = field.ratio(phi);
    dxdt[1] = phi * std::exp(t);  // ds/dt = e^t in both clocks
  };
  (void)shifted;
  auto stepper = odeint::make_controlled(c.atol, c.rtol, odeint::runge_kutta_dopri5<State>());
  State x{w0, 0.0};
  double t = t0;
  double dt = dt_sign * 1e-3;
  std::vector<RawStep> raw{{t, x[0], x[1]}};
  while (!stop(t, x[0])) {
    if (raw.size() > c.max_steps) throw ToleranceFailure("step budget exhausted");
    if (std::abs(dt) > c.max_dt) dt = dt_sign * c.max_dt;
    if (std::isfinite(t_limit) && dt_sign * (t + dt - t_limit) > 0.0) dt = t_limit - t;
    const auto result = stepper.try_step(sys, x, t, dt);
    if (result == odeint::success) {
      if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw ToleranceFailure("non-finite state");
      raw.push_back({t, x[0], x[1]});
    } else if (std::abs(dt) < 1e-14) {
      throw ToleranceFailure("step size underflow at t = " + std::to_string(t));
    }
  }
  return raw;
}

template <class Field>
RadialProfile::Node make_node(const Field& field, bool shifted, double t, double w, double excess) {
  RadialProfile::Node nd;
  nd.s = shifted ? std::expm1(t) : std::exp(t);
  const double rate = shifted ? nd.s + 1.0 : nd.s;
  nd.phi = std::exp(w);
  const double R = field.ratio(nd.phi);
  const double g = nd.phi * R;
  const double gprime = R + ratio_slope(field, w);
  nd.dpsi = g / rate;
  nd.ddpsi = (gprime * nd.dpsi - g / rate) / rate;
  nd.excess = excess;
  return nd;
}

/// kappa with the exponent held at p, least squares in log space over the
/// last decade of nodes.
inline double fit_tail_constant(const std::vector<RadialProfile::Node>& nodes, double p) {
  const double s_cut = nodes.back().s;
  double acc = 0.0;
  int m = 0;
  for (auto it = nodes.rbegin(); it != nodes.rend() && it->s >= 0.1 * s_cut; ++it) {
    acc += std::log(it->phi) - p * std::log(it->s);
    ++m;
  }
  return std::exp(acc / m);
}

/// Inward integration of psi' = g(psi)/s from s_max (on the tail
/// 1 + kappa s^p) down to s_min.
template <class Field>
RadialProfile exact_profile(const Field& field, double kappa, double u0, const Controls& c) {
  if (!(kappa >= 0.0)) throw InvalidInput("kappa must be nonnegative");
  if (kappa == 0.0) return RadialProfile::constant(u0, RadialProfile::Clock::Plain);
  const double p = field.g_prime_at_one();
  if (!(p < -1.0)) throw NotAdmissible("tail exponent must be below -1");
  const double t0 = std::log(c.s_max);
  const double t_end = std::log(c.s_min);
  const double w0 = std::log(kappa) + p * t0;
  auto raw = integrate_flow(
      field, false, t0, w0, -1.0, c, [&](double t, double) { return t <= t_end; }, t_end);
  std::reverse(raw.begin(), raw.end());

  RadialProfile::Parts parts;
  parts.clock = RadialProfile::Clock::Plain;
  parts.u0 = u0;
  parts.kappa = kappa;
  parts.tail_exponent = p;
  const double s0 = std::exp(raw.front().t);
  const double phi0 = std::exp(raw.front().w);
  const double psi0 = 1.0 + phi0;
  const double q = phi0 * field.ratio(phi0) / psi0;  // s psi' / psi
  if (!(q > -1.0)) throw ToleranceFailure("head exponent not integrable");
  parts.head_exponent = q;
  parts.head_coef = psi0 * std::pow(s0, -q);
  const double head = s0 * psi0 / (q + 1.0) - s0;
  for (const RawStep& r : raw) {
    parts.nodes.push_back(make_node(field, false, r.t, r.w, head + (r.e - raw.front().e)));
  }
  parts.nodes.front().s = s0;
  const RadialProfile::Node& last = parts.nodes.back();
  parts.mu = last.excess + kappa * std::pow(last.s, p + 1.0) / (-p - 1.0);
  parts.alpha = std::numeric_limits<double>::infinity();
  return RadialProfile::from_parts(std::move(parts));
}

}  // namespace detail

/// Solves psi' = g(psi)/(s+1), psi(0) = alpha, out to the tail. alpha = 1
/// gives the constant profile without integration.
inline RadialProfile solve_psi(const GData& gd, double alpha, const Controls& c = {},
                               double u0 = 0.0) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainViolation("alpha must be >= 1");
  if (alpha == 1.0) return RadialProfile::constant(u0);
  const double p = gd.g_prime_at_one();
  const double t_min_end = std::log1p(c.tail_min_s);
  auto raw = detail::integrate_flow(
      gd, true, 0.0, std::log(alpha - 1.0), 1.0, c,
      [&](double t, double w) { return t >= t_min_end && std::exp(w) < c.tail_threshold; },
      std::numeric_limits<double>::infinity());

  RadialProfile::Parts parts;
  parts.clock = RadialProfile::Clock::Shifted;
  parts.alpha = alpha;
  parts.u0 = u0;
  parts.tail_exponent = p;
  for (const detail::RawStep& r : raw) {
    parts.nodes.push_back(detail::make_node(gd, true, r.t, r.w, r.e));
  }
  parts.nodes.front().s = 0.0;
  parts.kappa = detail::fit_tail_constant(parts.nodes, p);
  const RadialProfile::Node& last = parts.nodes.back();
  parts.mu = p < -1.0 ? last.excess + parts.kappa * std::pow(last.s, p + 1.0) / (-p - 1.0)
                      : std::numeric_limits<double>::infinity();
  return RadialProfile::from_parts(std::move(parts));
}

/// mu(alpha) = int_0^inf (psi(s, alpha) - 1) ds.
inline double mu(const GData& gd, double alpha, const Controls& c = {}) {
  if (!gd.decay().admissible) throw NotAdmissible("delta0 <= 2: mu diverges");
  return solve_psi(gd, alpha, c).mu();
}

struct ShootResult {
  double alpha = 1.0;
  double mu = 0.0;
  int evaluations = 0;
};

/// alpha with target - mu_tol < mu(alpha) <= target, by doubling from
/// [1, 2] and bisection.
inline ShootResult shoot_alpha(const GData& gd, double target, const Controls& c = {}) {
  if (!gd.decay().admissible) throw NotAdmissible("delta0 <= 2");
  if (!(target >= 0.0)) throw InvalidInput("target c - u0 must be nonnegative");
  ShootResult out;
  if (target == 0.0) return out;

  double lo = 1.0;
  double mu_lo = 0.0;
  double hi = 2.0;
  double mu_hi = mu(gd, hi, c);
  ++out.evaluations;
  for (int k = 0; mu_hi <= target; ++k) {
    if (k >= c.max_doublings) throw BracketFailure("mu did not reach the target");
    lo = hi;
    mu_lo = mu_hi;
    hi *= 2.0;
    mu_hi = mu(gd, hi, c);
    ++out.evaluations;
  }
  while (target - mu_lo >= c.mu_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) throw ToleranceFailure("bisection stalled before mu_tol");
    const double m = mu(gd, mid, c);
    ++out.evaluations;
    if (m <= target) {
      lo = mid;
      mu_lo = m;
    } else {
      hi = mid;
    }
  }
  out.alpha = lo;
  out.mu = mu_lo;
  return out;
}

/// Profile with U(0) = u0 and U' = psi(., alpha).
inline RadialProfile build_profile(const GData& gd, double alpha, double u0,
                                   const Controls& c = {}) {
  return solve_psi(gd, alpha, c, u0);
}

/// Exact solution of G = C0 for isotropic A: psi' = g(psi)/s, integrated
/// inward from the tail 1 + kappa s^{g'(1)}.
inline RadialProfile exact_isotropic_profile(const GData& gd, double kappa, const Controls& c = {},
                                             double u0 = 0.0) {
  if (!gd.isotropic()) throw InvalidInput("exact radial solutions need isotropic A");
  return detail::exact_profile(gd, kappa, u0, c);
}

/// The same inward scheme on the Monge-Ampere field; checked against the
/// closed form.
inline RadialProfile exact_ma_profile_numeric(int n, double kappa, const Controls& c = {},
                                              double u0 = 0.0) {
  return detail::exact_profile(MaField(n), kappa, u0, c);
}

/// Closed-form Monge-Ampere radial solution
///   U'(s) = (1 + c1 (2s)^{-n/2})^{1/n},   U(s) = u0 + int_0^{sqrt(2s)} (r^n + c1)^{1/n} dr,
/// which solves (U')^n + 2 s U'' (U')^{n-1} = 1, so det D^2 u = sigma_n(A).
class MaProfile {
 public:
  using Sample = RadialProfile::Sample;

  MaProfile() = default;
  MaProfile(int n, double c1, double u0) : n_(n), c1_(c1), u0_(u0) {
    if (n < 3) throw InvalidInput("dimension must be at least 3");
    if (!(c1 >= 0.0)) throw InvalidInput("c1 must be nonnegative");
    if (c1 > 0.0) {
      scale_ = std::pow(c1, 2.0 / n);
      head_low_ = head_series(kLow);
      unit_total_ = head_low_ + gauss_piece(kLow, kHigh) + tail_series(kHigh);
      mu_ = scale_ * unit_total_;
    }
  }

  int n() const { return n_; }
  double c1() const { return c1_; }
  double u0() const { return u0_; }
  double mu() const { return mu_; }
  bool is_constant() const { return c1_ == 0.0; }
  double cone_radius() const { return std::pow(c1_, 1.0 / n_); }

  /// psi - 1.
  double phi(double s) const {
    if (c1_ == 0.0) return 0.0;
    return std::expm1(std::log1p(c1_ * std::pow(2.0 * s, -0.5 * n_)) / n_);
  }

  Sample sample(double s) const {
    Sample out;
    out.U = u0_ + s;
    if (c1_ == 0.0) return out;
    const double x = c1_ * std::pow(2.0 * s, -0.5 * n_);
    out.psi = 1.0 + phi(s);
    // n psi^{n-1} psi' = -n c1 (2s)^{-n/2-1}
    out.dpsi = -x / (2.0 * s) / std::pow(out.psi, n_ - 1);
    const double dx = -0.5 * n_ * x / s;
    out.ddpsi = -(dx / (2.0 * s) - x / (2.0 * s * s)) / std::pow(out.psi, n_ - 1) +
                x / (2.0 * s) * (n_ - 1) * std::pow(out.psi, -n_) * out.dpsi;
    out.excess = excess(s);
    out.U = u0_ + s + out.excess;
    return out;
  }

  double excess(double s) const {
    if (c1_ == 0.0 || s <= 0.0) return 0.0;
    return scale_ * unit_excess(std::sqrt(2.0 * s) / cone_radius());
  }

  double remaining(double s) const {
    if (c1_ == 0.0) return 0.0;
    const double t = std::sqrt(2.0 * s) / cone_radius();
    if (t >= kHigh) return scale_ * tail_series(t);
    return scale_ * (unit_total_ - unit_excess(t));
  }

 private:
  // With r = c1^{1/n} t the gap integrand is c1^{1/n} g(t), g(t) = (t^n + 1)^{1/n} - t.
  // Binomial series cover t <= 1/2 and t >= 2, Gauss-Legendre the middle.
  static constexpr double kLow = 0.5;
  static constexpr double kHigh = 2.0;

  double unit_gap(double t) const {
    if (t <= 0.0) return 1.0;
    return t * std::expm1(std::log1p(std::pow(t, -n_)) / n_);
  }

  // int_0^t g
  double head_series(double t) const {
    const double q = 1.0 / n_;
    const double tn = std::pow(t, n_);
    double binom = 1.0, pw = t, sum = t;
    for (int k = 1; k < 200; ++k) {
      binom *= (q - k + 1) / k;
      pw *= tn;
      const double term = binom * pw / (n_ * k + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum - 0.5 * t * t;
  }

  // int_t^inf g
  double tail_series(double t) const {
    const double q = 1.0 / n_;
    const double tn = std::pow(t, -n_);
    double binom = 1.0, pw = t * t, sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      binom *= (q - k + 1) / k;
      pw *= tn;
      const double term = binom * pw / (n_ * k - 2);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }

  double gauss_piece(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    auto f = [this](double t) { return unit_gap(t); };
    // split so each panel stays well resolved
    const int panels = 4;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
      const double a = lo + (hi - lo) * i / panels;
      const double b = lo + (hi - lo) * (i + 1) / panels;
      sum += boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
    }
    return sum;
  }

  double unit_excess(double t) const {
    if (t <= kLow) return head_series(t);
    if (t <= kHigh) return head_low_ + gauss_piece(kLow, t);
    return unit_total_ - tail_series(t);
  }

  int n_ = 3;
  double c1_ = 0.0;
  double u0_ = 0.0;
  double mu_ = 0.0;
  double scale_ = 0.0;
  double head_low_ = 0.0;
  double unit_total_ = 0.0;
};

/// Closed-form Monge-Ampere solution; A must satisfy (1/n) sum ln lambda_i(A) = C0.
inline MaProfile ma_closed_form(int n, double C0, double c1, std::span<const double> lambdaA,
                                double u0 = 0.0) {
  if (lambdaA.size() != static_cast<std::size_t>(n)) throw InvalidInput("need n eigenvalues");
  double mean_log = 0.0;
  for (double l : lambdaA) {
    if (!(l > 0.0)) throw Incompatible("A must be positive definite");
    mean_log += std::log(l) / n;
  }
  if (std::abs(mean_log - C0) > 1e-8) throw Incompatible("(1/n) sum ln lambda(A) != C0");
  return MaProfile(n, c1, u0);
}

/// N(psi) + 2 (s + shift) psi' D(psi) for a LogQuotient profile; zero on
/// exact trajectories (shift 1 for subsolution profiles, 0 for exact ones).
inline double profile_ode_residual(const GData& gd, const RadialProfile& prof, double s) {
  const auto smp = prof.sample(s);
  const double phi = smp.psi - 1.0;
  return gd.numerator_phi(phi) + 2.0 * prof.clock_rate(s) * smp.dpsi * gd.denominator_phi(phi);
}

/// Residual at a stored node, using the stored psi' rather than the
/// interpolant.
inline double node_ode_residual(const GData& gd, const RadialProfile& prof, std::size_t i) {
  const auto& nd = prof.parts().nodes.at(i);
  return gd.numerator_phi(nd.phi) + 2.0 * prof.clock_rate(nd.s) * nd.dpsi * gd.denominator_phi(nd.phi);
}

}  // namespace mgg
