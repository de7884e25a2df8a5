#pragma once

// Punctured-space solutions u(x) = U(1/2 (Ox)^T Lambda (Ox)) + beta x assembled
// from a radial profile and the eigenframe of A.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mgg/errors.hpp"
#include "mgg/odeflow.hpp"
#include "mgg/operators.hpp"
#include "mgg/radial.hpp"

namespace mgg {

/// A = O^T diag(eigvals) O, plus the affine data beta, c, u0.
struct QuadraticModel {
  Eigen::MatrixXd A;
  std::vector<double> eigvals;  // ascending
  Eigen::MatrixXd O;            // rows are eigenvectors
  Eigen::VectorXd beta;
  double c = 0.0;
  double u0 = 0.0;

  static QuadraticModel from_matrix(const Eigen::MatrixXd& A, Eigen::VectorXd beta, double c,
                                    double u0) {
    if (A.rows() != A.cols() || A.rows() == 0) throw InvalidInput("A must be square");
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw InvalidInput("A must be symmetric");
    }
    const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw InvalidInput("eigendecomposition of A failed");
    QuadraticModel m;
    m.A = sym;
    m.eigvals.assign(es.eigenvalues().data(), es.eigenvalues().data() + A.rows());
    m.O = es.eigenvectors().transpose();
    m.set_affine(std::move(beta), c, u0);
    return m;
  }

  static QuadraticModel diagonal(std::vector<double> eigvals, Eigen::VectorXd beta, double c,
                                 double u0) {
    const auto n = static_cast<Eigen::Index>(eigvals.size());
    if (n == 0) throw InvalidInput("need at least one eigenvalue");
    if (!std::is_sorted(eigvals.begin(), eigvals.end())) {
      Eigen::MatrixXd A = Eigen::VectorXd::Map(eigvals.data(), n).asDiagonal();
      return from_matrix(A, std::move(beta), c, u0);
    }
    QuadraticModel m;
    m.A = Eigen::VectorXd::Map(eigvals.data(), n).asDiagonal();
    m.eigvals = std::move(eigvals);
    m.O = Eigen::MatrixXd::Identity(n, n);
    m.set_affine(std::move(beta), c, u0);
    return m;
  }

  int n() const { return static_cast<int>(eigvals.size()); }

  /// 1/2 x^T A x + beta x + c.
  double asymptote(const Eigen::VectorXd& x) const { return 0.5 * x.dot(A * x) + beta.dot(x) + c; }

  double orthogonality_defect() const {
    return (O * O.transpose() - Eigen::MatrixXd::Identity(n(), n())).cwiseAbs().maxCoeff();
  }

  double reconstruction_defect() const {
    const Eigen::VectorXd l = Eigen::VectorXd::Map(eigvals.data(), n());
    return (O.transpose() * l.asDiagonal() * O - A).cwiseAbs().maxCoeff();
  }

 private:
  void set_affine(Eigen::VectorXd b, double c_, double u0_) {
    if (b.size() == 0) b = Eigen::VectorXd::Zero(n());
    if (b.size() != n()) throw InvalidInput("beta length must be n");
    if (eigvals.front() <= 0.0) throw DomainViolation("A must be positive definite");
    beta = std::move(b);
    c = c_;
    u0 = u0_;
  }
};

enum class SolutionKind { Subsolution, ExactIsotropic, ExactMA, Quadratic };

inline std::string_view to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Subsolution: return "Subsolution";
    case SolutionKind::ExactIsotropic: return "ExactIsotropic";
    case SolutionKind::ExactMA: return "ExactMA";
    case SolutionKind::Quadratic: return "Quadratic";
  }
  return "?";
}

inline SolutionKind kind_from_string(std::string_view s) {
  for (SolutionKind k : {SolutionKind::Subsolution, SolutionKind::ExactIsotropic,
                         SolutionKind::ExactMA, SolutionKind::Quadratic}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidInput("unknown solution kind: " + std::string(s));
}

using Profile = std::variant<RadialProfile, MaProfile>;

inline bool profile_is_constant(const Profile& p) {
  return std::visit([](const auto& q) { return q.is_constant(); }, p);
}

inline RadialProfile::Sample profile_sample(const Profile& p, double s) {
  return std::visit([s](const auto& q) { return q.sample(s); }, p);
}

inline double profile_mu(const Profile& p) {
  return std::visit([](const auto& q) { return q.mu(); }, p);
}

inline double profile_remaining(const Profile& p, double s) {
  return std::visit([s](const auto& q) { return q.remaining(s); }, p);
}

/// psi(0) when finite; for conical origins the slope blows up.
inline bool bounded_slope(const Profile& p) {
  if (profile_is_constant(p)) return true;
  if (const auto* r = std::get_if<RadialProfile>(&p)) {
    return r->clock() == RadialProfile::Clock::Shifted;
  }
  return false;
}

struct PointValue {
  double u = 0.0;
  Eigen::VectorXd Du;
  std::optional<Spectrum> spectrum;  // empty at the origin
  double s = 0.0;
  double cone_radius = 0.0;  // |Du - beta| limit at a conical origin
};

class PuncturedSolution {
 public:
  PuncturedSolution(QuadraticModel model, Profile profile, OperatorParams params, SolutionKind kind)
      : model_(std::move(model)), profile_(std::move(profile)), params_(params), kind_(kind) {
    if (params_.n != model_.n()) throw InvalidInput("params.n differs from A");
    if ((kind_ == SolutionKind::Quadratic) != profile_is_constant(profile_)) {
      throw InvalidInput("kind Quadratic iff the profile has constant slope");
    }
    if (kind_ == SolutionKind::ExactMA && !std::holds_alternative<MaProfile>(profile_)) {
      throw InvalidInput("ExactMA needs the closed-form profile");
    }
    if (model_.c < model_.u0) throw InvalidInput("c must be >= u0");
    const double u0p = profile_sample(profile_, 0.0).U;
    if (u0p != model_.u0) {
      throw InvalidInput("profile U(0) differs from u0");
    }
  }

  const QuadraticModel& model() const { return model_; }
  const Profile& profile() const { return profile_; }
  const OperatorParams& params() const { return params_; }
  SolutionKind kind() const { return kind_; }
  int n() const { return model_.n(); }

  /// y = O x, coordinates in the eigenframe.
  Eigen::VectorXd frame_coords(const Eigen::VectorXd& x) const {
    check_dim(x);
    return model_.O * x;
  }

  double level(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd y = frame_coords(x);
    double s = 0.0;
    for (int i = 0; i < n(); ++i) s += model_.eigvals[static_cast<std::size_t>(i)] * y(i) * y(i);
    return 0.5 * s;
  }

  /// Radial frame (eigenframe coordinates, U', U'') at x.
  RadialFrame frame(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd y = frame_coords(x);
    const double s = level(x);
    const auto smp = profile_sample(profile_, s);
    return RadialFrame::at(model_.eigvals, std::vector<double>(y.data(), y.data() + y.size()),
                           smp.psi, smp.dpsi);
  }

  PointValue evaluate(const Eigen::VectorXd& x) const {
    PointValue out;
    out.s = level(x);
    const auto smp = profile_sample(profile_, out.s);
    out.u = smp.U + model_.beta.dot(x);
    if (out.s == 0.0) {
      out.Du = model_.beta;
      if (!bounded_slope(profile_)) {
        out.cone_radius = std::visit([](const auto& q) { return q.cone_radius(); }, profile_);
      }
      return out;
    }
    const Eigen::VectorXd y = frame_coords(x);
    Eigen::VectorXd grad(n());
    for (int i = 0; i < n(); ++i) grad(i) = smp.psi * model_.eigvals[static_cast<std::size_t>(i)] * y(i);
    out.Du = model_.O.transpose() * grad + model_.beta;
    out.spectrum = hessian_spectrum(frame(x));
    return out;
  }

  /// Eigenvalues of D^2 u at x != 0.
  Spectrum spectrum(const Eigen::VectorXd& x) const {
    if (level(x) == 0.0) throw OriginHessian("Hessian is undefined at the origin");
    return hessian_spectrum(frame(x));
  }

  /// Dense D^2 u in the original coordinates.
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const {
    if (level(x) == 0.0) throw OriginHessian("Hessian is undefined at the origin");
    return model_.O.transpose() * hessian_matrix(frame(x)) * model_.O;
  }

  double u(const Eigen::VectorXd& x) const {
    return profile_sample(profile_, level(x)).U + model_.beta.dot(x);
  }

  /// O^T diag(signs) O x.
  Eigen::VectorXd reflect(const Eigen::VectorXd& x, std::span<const int> signs) const {
    if (signs.size() != static_cast<std::size_t>(n())) throw InvalidInput("need n signs");
    Eigen::VectorXd y = frame_coords(x);
    for (int i = 0; i < n(); ++i) {
      if (signs[static_cast<std::size_t>(i)] != 1 && signs[static_cast<std::size_t>(i)] != -1) {
        throw InvalidInput("signs must be +1 or -1");
      }
      y(i) *= signs[static_cast<std::size_t>(i)];
    }
    return model_.O.transpose() * y;
  }

  /// |(u - beta x)(reflected x) - (u - beta x)(x)|.
  double symmetry_defect(const Eigen::VectorXd& x, std::span<const int> signs) const {
    const Eigen::VectorXd xr = reflect(x, signs);
    return std::abs((u(xr) - model_.beta.dot(xr)) - (u(x) - model_.beta.dot(x)));
  }

  /// (1/2 x^T A x + beta x + c) - u(x), formed as (c - u0 - mu) + int_s^inf (psi - 1).
  double comparison_gap(const Eigen::VectorXd& x) const {
    const double slack = model_.c - model_.u0;
    if (profile_is_constant(profile_)) return slack;
    const double s = level(x);
    return (slack - profile_mu(profile_)) + profile_remaining(profile_, s);
  }

  /// Gap against the realized asymptote u0 + mu: int_s^inf (psi - 1).
  double realized_gap(const Eigen::VectorXd& x) const {
    if (profile_is_constant(profile_)) return 0.0;
    return profile_remaining(profile_, level(x));
  }

  /// Exponent p of psi - 1 ~ kappa s^p.
  double tail_exponent() const {
    if (const auto* r = std::get_if<RadialProfile>(&profile_)) return r->tail_exponent();
    return -0.5 * std::get<MaProfile>(profile_).n();
  }

 private:
  void check_dim(const Eigen::VectorXd& x) const {
    if (x.size() != n()) throw InvalidInput("point dimension differs from n");
  }

  QuadraticModel model_;
  Profile profile_;
  OperatorParams params_;
  SolutionKind kind_;
};

/// LogQuotient radial data for the model's eigenvalues.
inline GData gdata_for(const OperatorParams& p, const QuadraticModel& m) {
  return GData::make(p, m.eigvals);
}

struct SubsolutionResult {
  PuncturedSolution solution;
  ShootResult shot;
};

/// Shooting construction: U(0) = u0, U(s) - s -> c. Target c - u0 = 0 gives
/// the quadratic solution without integration.
inline SubsolutionResult solve_subsolution(const OperatorParams& p, const QuadraticModel& m,
                                           const Controls& c = {}) {
  const GData gd = gdata_for(p, m);
  const ShootResult shot = shoot_alpha(gd, m.c - m.u0, c);
  RadialProfile prof = build_profile(gd, shot.alpha, m.u0, c);
  const SolutionKind kind = prof.is_constant() ? SolutionKind::Quadratic : SolutionKind::Subsolution;
  return {PuncturedSolution(m, std::move(prof), p, kind), shot};
}

/// Exact isotropic LogQuotient solution with tail 1 + kappa s^{g'(1)}; the
/// model's c is replaced by the realized u0 + mu.
inline PuncturedSolution exact_isotropic_solution(const OperatorParams& p, QuadraticModel m,
                                                  double kappa, const Controls& c = {}) {
  const GData gd = gdata_for(p, m);
  RadialProfile prof = exact_isotropic_profile(gd, kappa, c, m.u0);
  m.c = m.u0 + prof.mu();
  const SolutionKind kind = prof.is_constant() ? SolutionKind::Quadratic : SolutionKind::ExactIsotropic;
  return PuncturedSolution(std::move(m), std::move(prof), p, kind);
}

/// Closed-form Monge-Ampere solution; the model's c is replaced by u0 + mu.
inline PuncturedSolution ma_solution(const OperatorParams& p, QuadraticModel m, double c1) {
  if (p.regime != Regime::MongeAmpere) throw RegimeMismatch("closed form is for tau = 0");
  MaProfile prof = ma_closed_form(p.n, p.C0, c1, m.eigvals, m.u0);
  m.c = m.u0 + prof.mu();
  if (prof.is_constant()) {
    RadialProfile flat = RadialProfile::constant(m.u0);
    return PuncturedSolution(std::move(m), std::move(flat), p, SolutionKind::Quadratic);
  }
  return PuncturedSolution(std::move(m), std::move(prof), p, SolutionKind::ExactMA);
}

/// u = 1/2 x^T A x + beta x + c; requires c = u0.
inline PuncturedSolution quadratic_solution(const OperatorParams& p, QuadraticModel m) {
  if (m.c != m.u0) throw InvalidInput("quadratic solution has c = u0");
  return PuncturedSolution(m, RadialProfile::constant(m.u0), p, SolutionKind::Quadratic);
}

}  // namespace mgg
