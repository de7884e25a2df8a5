#pragma once

// Hessian structure of generalized-symmetric functions u(x) = U(s) with
// s = 1/2 sum a_i x_i^2:
//   D_i u = U' a_i x_i,   D_ij u = U' a_i delta_ij + U'' a_i a_j x_i x_j.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "mgg/errors.hpp"
#include "mgg/operators.hpp"
#include "mgg/sympoly.hpp"

namespace mgg {

struct RadialFrame {
  std::vector<double> a;  // ascending, positive
  std::vector<double> x;
  double s = 0.0;
  double Up = 1.0;   // U'(s)
  double Upp = 0.0;  // U''(s)

  static RadialFrame at(std::vector<double> a, std::vector<double> x, double Up, double Upp) {
    if (a.size() != x.size()) throw InvalidInput("a and x differ in length");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(a[i] > 0.0)) throw DomainViolation("a must be positive");
      if (i > 0 && a[i] < a[i - 1]) throw InvalidInput("a must be ascending");
    }
    RadialFrame f{std::move(a), std::move(x), 0.0, Up, Upp};
    f.s = level(f.a, f.x);
    return f;
  }

  static double level(std::span<const double> a, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i] * x[i];
    return 0.5 * s;
  }

  /// |1/2 sum a_i x_i^2 - s|
  double consistency_defect() const { return std::abs(level(a, x) - s); }

  std::size_t n() const { return a.size(); }

  /// v = (a_1 x_1, ..., a_n x_n)
  std::vector<double> weighted_point() const {
    std::vector<double> v(n());
    for (std::size_t i = 0; i < n(); ++i) v[i] = a[i] * x[i];
    return v;
  }

  /// d = (U' a_1, ..., U' a_n)
  std::vector<double> diagonal() const {
    std::vector<double> d(n());
    for (std::size_t i = 0; i < n(); ++i) d[i] = Up * a[i];
    return d;
  }
};

inline Eigen::MatrixXd hessian_matrix(const RadialFrame& f) {
  const auto n = static_cast<Eigen::Index>(f.n());
  Eigen::VectorXd v(n);
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = f.a[static_cast<std::size_t>(i)] * f.x[static_cast<std::size_t>(i)];
    d(i) = f.Up * f.a[static_cast<std::size_t>(i)];
  }
  Eigen::MatrixXd h = f.Upp * v * v.transpose();
  h.diagonal() += d;
  return h;
}

inline std::vector<double> gradient(const RadialFrame& f) {
  std::vector<double> g(f.n());
  for (std::size_t i = 0; i < f.n(); ++i) g[i] = f.Up * f.a[i] * f.x[i];
  return g;
}

namespace detail {

/// Dense symmetric eigenvalues of diag(d) + rho v v^T, ascending.
inline std::vector<double> dense_rank_one_eigenvalues(std::span<const double> d,
                                                      std::span<const double> v, double rho) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = rho * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    }
    m(i, i) += d[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  return out;
}

/// Roots of 1 + rho sum z_i^2 / (d_i - l) for rho > 0, ascending distinct
/// poles d and nonzero z. Each root is bisected in the offset from the
/// nearer pole, so the differences d_i - l are formed without cancellation.
inline std::vector<double> secular_roots(const std::vector<double>& d, const std::vector<double>& z,
                                         double rho) {
  const std::size_t m = d.size();
  double z2 = 0.0;
  for (double zi : z) z2 += zi * zi;
  std::vector<double> roots(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lo = d[k];
    const double hi = k + 1 < m ? d[k + 1] : d[k] + rho * z2;
    auto f = [&](double origin, double mu) {
      double acc = 1.0;
      for (std::size_t i = 0; i < m; ++i) acc += rho * z[i] * z[i] / ((d[i] - origin) - mu);
      return acc;
    };
    // Root lies left of the midpoint iff f(mid) > 0.
    const double mid = 0.5 * (hi - lo);
    const bool near_left = k + 1 == m || f(lo, mid) > 0.0;
    const double origin = near_left ? lo : hi;
    double mu_lo = near_left ? 0.0 : -(hi - lo);
    double mu_hi = near_left ? (hi - lo) : 0.0;
    if (near_left && k + 1 < m) mu_hi = mid;
    if (!near_left) mu_lo = -mid;
    for (int it = 0; it < 2000; ++it) {
      const double mu = 0.5 * (mu_lo + mu_hi);
      if (mu == mu_lo || mu == mu_hi) break;
      const double fm = f(origin, mu);
      if (fm > 0.0) {
        mu_hi = mu;
      } else if (fm < 0.0) {
        mu_lo = mu;
      } else {
        mu_lo = mu_hi = mu;
      }
    }
    roots[k] = origin + 0.5 * (mu_lo + mu_hi);
  }
  return roots;
}

}  // namespace detail

/// Eigenvalues of diag(d) + rho v v^T through the secular equation, with
/// deflation of negligible v_i (|v_i| <= 1e-14 |v|) and of repeated d_i.
inline Spectrum eigen_rank_one(std::span<const double> d, std::span<const double> v, double rho) {
  const std::size_t n = d.size();
  if (v.size() != n) throw InvalidInput("d and v differ in length");
  const double vnorm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (rho == 0.0 || vnorm == 0.0) return Spectrum(std::vector<double>(d.begin(), d.end()));

  if (rho < 0.0) {
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -d[i];
    const Spectrum flipped = eigen_rank_one(neg, v, -rho);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = -flipped[i];
    return Spectrum(std::move(out));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  double dscale = 0.0;
  for (double di : d) dscale = std::max(dscale, std::abs(di));
  const double tie = 4.0 * std::numeric_limits<double>::epsilon() * dscale;

  std::vector<double> out;
  std::vector<double> poles;
  std::vector<double> weights;
  out.reserve(n);
  for (std::size_t idx : order) {
    if (std::abs(v[idx]) <= 1e-14 * vnorm) {
      out.push_back(d[idx]);
      continue;
    }
    if (!poles.empty() && d[idx] - poles.back() <= tie) {
      // Rotate the pair so one component carries the whole weight; the other
      // becomes a decoupled eigenvalue at the shared pole.
      out.push_back(poles.back());
      weights.back() = std::hypot(weights.back(), v[idx]);
      continue;
    }
    poles.push_back(d[idx]);
    weights.push_back(v[idx]);
  }
  const std::vector<double> roots = detail::secular_roots(poles, weights, rho);
  out.insert(out.end(), roots.begin(), roots.end());

  double trace_d = 0.0;
  double trace_out = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trace_d += d[i];
    trace_out += out[i];
  }
  const double expected = trace_d + rho * vnorm * vnorm;
  const double scale = std::max({1.0, std::abs(expected), dscale, rho * vnorm * vnorm});
  bool finite = std::all_of(out.begin(), out.end(), [](double l) { return std::isfinite(l); });
  if (!finite || std::abs(trace_out - expected) > 1e-8 * scale) {
    return Spectrum(detail::dense_rank_one_eigenvalues(d, v, rho));
  }
  return Spectrum(std::move(out));
}

/// Eigenvalues of D^2 u at the frame point.
inline Spectrum hessian_spectrum(const RadialFrame& f) {
  return eigen_rank_one(f.diagonal(), f.weighted_point(), f.Upp);
}

/// sigma_k(lambda(D^2 u)) = U'^k sigma_k(a) + U'' U'^{k-1} sum (a_i x_i)^2 sigma_{k-1;i}(a).
inline double sigma_k_profile(const RadialFrame& f, int k, const SigmaTable& table) {
  if (k == 0) return 1.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < f.n(); ++i) {
    const double ax = f.a[i] * f.x[i];
    cross += ax * ax * table.sigma_excl(k - 1, i);
  }
  return std::pow(f.Up, k) * table.sigma(k) + f.Upp * std::pow(f.Up, k - 1) * cross;
}

inline double sigma_k_profile(const RadialFrame& f, int k) {
  return sigma_k_profile(f, k, SigmaTable(f.a));
}

/// sigma_n(lambda(D^2(u + shift/4 |x|^2))), i.e. the determinant of
/// D^2 u + shift I:
///   sigma_n(a) prod (U' + shift/a_i) + U'' sigma_n(a) sum a_i x_i^2 prod_{j != i} (U' + shift/a_j).
inline double sigma_n_shifted(const RadialFrame& f, double shift) {
  const std::size_t n = f.n();
  double sn = 1.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    sn *= f.a[i];
    prod *= f.Up + shift / f.a[i];
  }
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) p *= f.Up + shift / f.a[j];
    }
    cross += f.a[i] * f.x[i] * f.x[i] * p;
  }
  return sn * prod + f.Upp * sn * cross;
}

}  // namespace mgg
