// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mgg/mgg.hpp"
#include "oracles.hpp"

using namespace mgg;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const double kTauB1 = std::atan2(1.0, std::numbers::sqrt2);

OperatorParams lq_for(double tau, const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  return OperatorParams::from_tau(tau, n, eval_G(OperatorParams::from_tau(tau, n, 0.0), Spectrum(a)));
}

QuadraticModel diag(std::vector<double> a, double c, double u0 = 0.0) {
  return QuadraticModel::diagonal(std::move(a), Eigen::VectorXd(), c, u0);
}

QuadraticModel rotated(const std::vector<double>& a, double c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(a.size());
  const Eigen::MatrixXd Q = oracle::random_orthogonal(n, rng);
  const Eigen::VectorXd d = Eigen::VectorXd::Map(a.data(), n);
  Eigen::VectorXd beta(n);
  std::normal_distribution<double> g;
  for (int i = 0; i < n; ++i) beta(i) = 0.3 * g(rng);
  return QuadraticModel::from_matrix(Q * d.asDiagonal() * Q.transpose(), beta, c, 0.0);
}

// 1: arctan identity and F = G o translate
Outcome operator_identity() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ab(0.05, 4.0);
  std::uniform_real_distribution<double> off(1e-3, 20.0);
  double lib = 0.0;
  double ext = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double a = ab(rng);
    const double b = ab(rng);
    std::vector<double> l(3 + t % 5);
    for (double& v : l) v = -a - b + off(rng);
    lib = std::max(lib, check_arctan_identity(a, b, Spectrum(l)));
    long double lhs = 0.0L;
    long double rhs = 0.0L;
    for (double v : l) {
      lhs += std::atan((static_cast<long double>(v) + a - b) / (static_cast<long double>(v) + a + b));
      rhs += std::atan((static_cast<long double>(v) + a) / b);
    }
    rhs -= l.size() * std::numbers::pi_v<long double> / 4;
    ext = std::max(ext, static_cast<double>(std::abs(lhs - rhs)));
  }
  std::uniform_real_distribution<double> tau_at(pi / 4 + 0.05, pi / 2 - 0.05);
  std::uniform_real_distribution<double> tau_lq(0.05, pi / 4 - 0.05);
  double fg = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int kind = t % 3;
    const OperatorParams p = kind == 0   ? OperatorParams::from_tau(tau_lq(rng), 4, 0.0)
                             : kind == 1 ? OperatorParams::of(Regime::InverseHarmonic, 4, 0.0)
                                         : OperatorParams::from_tau(tau_at(rng), 4, 0.0);
    std::vector<double> l(4);
    for (double& v : l) v = (kind == 0 ? p.b - p.a : kind == 1 ? -1.0 : -p.a - p.b) + off(rng);
    const double g = eval_G(p, translate_spectrum(p, Spectrum(l)));
    fg = std::max(fg, std::abs(eval_F(p, Spectrum(l)) - g) / std::max(1.0, std::abs(g)));
  }
  const double worst = std::max({lib, ext, fg});
  return {worst < 1e-12, fmt("identity %.2e, extended %.2e, F vs G(translate) %.2e (tol 1e-12)", lib, ext, fg)};
}

// 2: c0 prod (1 + 2b/a_i) = 1
Outcome c0_identity() {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> bd(0.05, 5.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double b = bd(rng);
    const double tau = std::atan2(1.0, std::sqrt(b * b + 1.0));
    const auto a = oracle::random_positive(3 + t % 4, rng, 0.05, 20.0);
    const auto p = lq_for(tau, a);
    double prod = p.c0;
    for (double ai : a) prod *= 1.0 + 2.0 * p.b / ai;
    worst = std::max(worst, std::abs(prod - 1.0));
  }
  bool rejects = false;
  try {
    const auto p = lq_for(kTauB1, {1, 1, 1});
    GData::make(OperatorParams::from_tau(kTauB1, 3, p.C0 * (1 + 1e-6)), {1, 1, 1});
  } catch (const Incompatible&) {
    rejects = true;
  }
  return {worst < 1e-10 && rejects, fmt("max |c0 prod - 1| = %.2e (tol 1e-10), inconsistent triple rejected: ", worst) +
                                         (rejects ? "yes" : "no")};
}

// 3: g(1) = 0 and g'(1) = -delta0/2
Outcome g_anchors() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> tau(0.1, pi / 4 - 0.1);
  double g1 = 0.0;
  double slope = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_positive(3 + t % 4, rng, 0.5, 2.0);
    const GData gd = GData::from_eigenvalues(tau(rng), a);
    if (!gd.decay().admissible) return {false, "configuration not admissible"};
    g1 = std::max(g1, std::abs(gd.g(1.0)));
    const double h = 1e-5;
    const double fd = (gd.g(1.0 + h) - gd.g(1.0 - h)) / (2 * h);
    double d0 = 0.0;
    for (double ai : a) d0 += (a.front() + 2 * gd.params().b) / (ai + 2 * gd.params().b);
    slope = std::max(slope, std::abs(fd + d0 / 2));
  }
  return {g1 < 1e-12 && slope < 1e-6, fmt("max |g(1)| = %.2e (tol 1e-12), max |g'(1) + delta0/2| = %.2e (tol 1e-6)", g1, slope)};
}

// 4: rank-one eigenvalues and sigma forms against dense oracles
Outcome rank_one() {
  std::mt19937_64 rng(104);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> up(0.2, 3.0);
  std::uniform_real_distribution<double> upp(-0.5, 0.5);
  double eig = 0.0;
  double sig = 0.0;
  double det = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 7;
    auto a = oracle::random_positive(n, rng, 0.3, 4.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = g(rng);
    const auto f = RadialFrame::at(a, x, up(rng), upp(rng));
    Eigen::MatrixXd h = oracle::radial_hessian(f.a, f.x, f.Up, f.Upp);
    const auto lam = oracle::eigenvalues(h);
    const Spectrum got = hessian_spectrum(f);
    double scale = 0.0;
    for (double l : lam) scale = std::max(scale, std::abs(l));
    for (std::size_t i = 0; i < lam.size(); ++i) eig = std::max(eig, std::abs(got[i] - lam[i]) / scale);
    const auto sk = oracle::sigma_by_subsets(lam);
    std::vector<double> absl(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) absl[i] = std::abs(lam[i]);
    const auto sabs = oracle::sigma_by_subsets(absl);
    for (int k = 1; k <= n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      sig = std::max(sig, std::abs(sigma_k_profile(f, k) - sk[kk]) / sabs[kk]);
    }
    const double shift = 2.0 * (0.1 + 0.1 * (t % 10));
    h.diagonal().array() += shift;
    double dscale = 1.0;
    for (double l : oracle::eigenvalues(h)) dscale *= std::abs(l);
    det = std::max(det, std::abs(sigma_n_shifted(f, shift) - h.determinant()) / dscale);
  }
  return {eig < 1e-10 && sig < 1e-9 && det < 1e-9,
          fmt("eigenvalues %.2e (tol 1e-10), sigma_k %.2e, shifted det %.2e (tol 1e-9)", eig, sig, det)};
}

// 5: shooting on a = (1,1,1), b = 1
Outcome shooting() {
  const GData gd = GData::from_eigenvalues(kTauB1, {1, 1, 1});
  double worst = 0.0;
  bool one_sided = true;
  for (double target : {0.0, 0.1, 1.0, 10.0}) {
    const auto r = shoot_alpha(gd, target);
    const double m = mu(gd, r.alpha);  // recomputed at the returned alpha
    worst = std::max(worst, std::abs(m - target));
    one_sided = one_sided && m <= target;
  }
  const bool mu_one = mu(gd, 1.0) == 0.0;
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> u(1.0, 20.0);
  bool increasing = true;
  for (int i = 0; i < 10; ++i) {
    double lo = u(rng);
    double hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    increasing = increasing && mu(gd, lo) < mu(gd, hi);
  }
  const auto prof = solve_psi(gd, 2.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = 31;
  for (int i = 0; i < m; ++i) {
    const double s = 1e3 * std::pow(1e3, i / double(m - 1));
    const double lx = std::log(s);
    const double ly = std::log(prof.sample(s).psi - 1.0);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double rel = std::abs(slope + 1.5) / 1.5;
  return {worst < 1e-8 && one_sided && mu_one && increasing && rel < 0.02,
          fmt("max |mu(alpha*) - target| = %.2e (tol 1e-8), tail exponent %.5f (2%% of -1.5)", worst, slope) +
              (mu_one ? ", mu(1) = 0" : ", mu(1) != 0") + (increasing ? ", mu increasing" : ", mu NOT increasing")};
}

std::vector<std::pair<std::vector<double>, bool>> anisotropic_configs() {
  return {{{1, 2, 2}, true}, {{1, 1.5, 3, 4}, false}, {{0.5, 1, 1.2}, true}, {{1, 1, 2}, false},
          {{1, 2, 3, 4, 5}, true}};
}

// 6: subsolution certificate
Outcome subsolution_certificate() {
  double min_res = 1e300;
  double min_eig = 1e300;
  double disagreement = 0.0;
  for (const auto& [a, rot] : anisotropic_configs()) {
    const auto p = lq_for(kTauB1, a);
    const auto m = rot ? rotated(a, 1.0, 200 + a.size()) : diag(a, 1.0);
    const auto sol = solve_subsolution(p, m).solution;
    for (const auto& x : Sampler{}.points(sol.n())) {
      const auto r = operator_residual(sol, x);
      min_res = std::min({min_res, r.eigen_path, r.sigma_path});
      disagreement = std::max(disagreement, std::abs(r.eigen_path - r.sigma_path));
      min_eig = std::min(min_eig, oracle::eigenvalues(sol.hessian(x)).front());
    }
  }
  return {min_res >= -1e-9 && min_eig > 0.0 && disagreement <= 1e-9,
          fmt("min G - C0 = %.2e (tol -1e-9), min eigenvalue %.3e, path disagreement %.2e", min_res, min_eig,
              disagreement)};
}

// 7: comparison gap and reflections
Outcome comparison_symmetry() {
  double gmin = 1e300;
  double origin = 0.0;
  double sym = 0.0;
  for (const auto& [a, rot] : anisotropic_configs()) {
    const auto p = lq_for(kTauB1, a);
    const auto m = rotated(a, 1.5, 300 + a.size());
    const auto sol = solve_subsolution(p, m).solution;
    origin = std::max(origin, std::abs(sol.comparison_gap(Eigen::VectorXd::Zero(sol.n())) - 1.5));
    for (const auto& x : Sampler{}.points(sol.n())) gmin = std::min(gmin, sol.comparison_gap(x));
    sym = std::max(sym, symmetry_check(sol, Sampler{}).measured);
  }
  return {gmin >= -1e-9 && origin < 1e-12 && sym < 1e-10,
          fmt("min gap %.2e (tol -1e-9), |gap(0) - (c - u0)| = %.1e, max reflection defect %.2e (tol 1e-10)", gmin,
              origin, sym)};
}

// 8: decay law along 8 rays
Outcome decay_law() {
  double worst = 0.0;
  for (const auto& a : {std::vector<double>{1, 2, 2}, std::vector<double>{1, 1.5, 3, 4}}) {
    const auto sol = solve_subsolution(lq_for(kTauB1, a), rotated(a, 1.0, 400 + a.size())).solution;
    const auto e = decay_check(sol, Sampler{}, 8);
    worst = std::max(worst, e.measured);
  }
  return {worst <= 0.05, fmt("max relative deviation from 2 - delta0 = %.4f (tol 0.05)", worst)};
}

// 9: exact Monge-Ampere
Outcome exact_ma() {
  double worst = 0.0;
  bool reduces = true;
  const std::vector<std::pair<double, std::vector<double>>> cases{
      {0.0, {1, 1, 1}}, {1.0, {1, 1, 1}}, {1.0, {0.5, 1, 2}}};
  for (const auto& [c1, a] : cases) {
    double C0 = 0.0;
    for (double ai : a) C0 += std::log(ai) / 3.0;
    const auto p = OperatorParams::of(Regime::MongeAmpere, 3, C0);
    const auto sol = ma_solution(p, diag(a, 0.0), c1);
    for (const auto& x : Sampler{}.points(3)) {
      // dense determinant oracle
      const double det = sol.hessian(x).determinant();
      worst = std::max(worst, std::abs(det / std::exp(3 * C0) - 1.0));
      if (c1 == 0.0) reduces = reduces && sol.u(x) == sol.model().asymptote(x);
    }
    if (c1 == 0.0) reduces = reduces && sol.kind() == SolutionKind::Quadratic;
  }
  return {worst < 1e-8 && reduces, fmt("max relative det defect %.2e (tol 1e-8)", worst) +
                                       (reduces ? ", c1 = 0 is the quadratic" : ", c1 = 0 NOT quadratic")};
}

// 10: inward integrator
Outcome inward_integrator() {
  const MaProfile closed(3, 1.0, 0.0);
  const auto num = exact_ma_profile_numeric(3, std::pow(2.0, -1.5) / 3.0);
  double psi_err = 0.0;
  for (double ls = -4; ls <= 4.0001; ls += 0.01) {
    const double s = std::pow(10.0, ls);
    psi_err = std::max(psi_err, std::abs(num.sample(s).psi / closed.sample(s).psi - 1.0));
  }
  double res = 0.0;
  const auto p = lq_for(kTauB1, {1, 1, 1});
  for (double kappa : {0.1, 1.0}) {
    const auto sol = exact_isotropic_solution(p, diag({1, 1, 1}, 0.0), kappa);
    res = std::max(res, residual_check(sol, Sampler{}, ResidualMode::Equality).measured);
  }
  return {psi_err < 1e-7 && res < 1e-7,
          fmt("closed-form psi relative error %.2e (tol 1e-7), isotropic equality residual %.2e (tol 1e-7)", psi_err, res)};
}

// 11: isotropic roots
Outcome isotropic_roots() {
  double closed = 0.0;
  std::vector<OperatorParams> ps{OperatorParams::from_tau(kTauB1, 3, 1.5 * std::sqrt(3.0) * std::log(1.0 / 3.0)),
                                 OperatorParams::from_tau(pi / 3, 4, 0.3),
                                 OperatorParams::from_tau(0.4 * pi, 5, -2.0),
                                 OperatorParams::of(Regime::SpecialLagrangian, 3, 3 * pi / 4),
                                 OperatorParams::of(Regime::SpecialLagrangian, 4, -1.0),
                                 OperatorParams::from_tau(0.1 * pi, 4, -3.0)};
  for (const auto& p : ps) {
    const auto r = isotropic_root(p);
    closed = std::max(closed, std::abs(r.value - r.closed_form) / std::max(1.0, std::abs(r.closed_form)));
  }
  double ih = 0.0;
  bool surfaced = false;
  for (double C0 : {-3 * std::numbers::sqrt2, -1.0, -7.5}) {
    const auto p = OperatorParams::of(Regime::InverseHarmonic, 3, C0);
    const auto r = isotropic_root(p);
    ih = std::max({ih, r.residual, std::abs(r.value + std::numbers::sqrt2 * 3 / C0)});
    surfaced = surfaced || !r.closed_form_consistent;
  }
  return {closed < 1e-10 && ih < 1e-12 && surfaced,
          fmt("closed-form agreement %.2e (tol 1e-10), inverse-harmonic residual %.2e (tol 1e-12)", closed, ih) +
              (surfaced ? ", printed form discrepancy reported" : ", discrepancy NOT reported")};
}

// 12: xi brackets and the admissibility family
Outcome delta0_machinery() {
  std::mt19937_64 rng(112);
  std::normal_distribution<double> g;
  double violation = 0.0;
  for (int cfg = 0; cfg < 3; ++cfg) {
    const int n = 3 + cfg;
    const auto l = oracle::random_positive(n, rng, 0.1, 10.0);
    const auto b = xi_bounds(l);
    const SigmaTable t(l);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < 100000; ++i) {
      for (double& v : x) v = g(rng);
      for (int k = 1; k <= n; ++k) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
          num += t.sigma_excl(k - 1, j) * l[j] * l[j] * x[j] * x[j];
          den += l[j] * x[j] * x[j];
        }
        const double v = num / (t.sigma(k) * den);
        const auto& xb = b[static_cast<std::size_t>(k - 1)];
        violation = std::max({violation, xb.lower - v, v - xb.upper});
      }
    }
  }
  // (a1, M, M) on the level set of (1,1,1)
  std::vector<double> d0s;
  bool gate = true;
  for (double M : {1.0, 3.0, 10.0, 100.0, 1e4, 1e6}) {
    const double a1 = 2.0 / (27.0 / ((1 + 2 / M) * (1 + 2 / M)) - 1.0);
    const std::vector<double> a{a1, M, M};
    const auto ad = admissibility(lq_for(kTauB1, a), a);
    d0s.push_back(ad.delta0);
    gate = gate && ad.admissible == (ad.delta0 > 2.0);
  }
  bool descending = true;
  for (std::size_t i = 1; i < d0s.size(); ++i) descending = descending && d0s[i] < d0s[i - 1];
  const bool crosses = d0s.front() > 2.0 && d0s.back() < 2.0;
  return {violation <= 1e-12 && descending && crosses && gate && std::abs(d0s.back() - 1.0) < 1e-3,
          fmt("bracket violation %.1e, delta0 from %.3f down to %.6f", violation, d0s.front(), d0s.back()) +
              (gate ? ", gate fails once delta0 <= 2" : ", gate inconsistent")};
}

// 13: rigidity probes
Outcome rigidity() {
  const auto grid = log_grid(1e-3, 1e6, 91);
  const std::vector<double> aniso{1, 2, 2};
  const std::vector<double> iso{1, 1, 1};
  const GData gd = GData::from_eigenvalues(kTauB1, aniso);
  const Profile curved = solve_psi(gd, 2.0);
  const Profile iso_curved = solve_psi(GData::from_eigenvalues(kTauB1, iso), 2.0);
  const Profile flat = RadialProfile::constant(0.0);
  const std::vector<OperatorParams> regimes{gd.params(),
                                            OperatorParams::of(Regime::InverseHarmonic, 3, -2 * std::numbers::sqrt2),
                                            OperatorParams::of(Regime::SpecialLagrangian, 3, 3 * pi / 4)};
  double zero = 0.0;
  double positive = 1e300;
  for (const auto& p : regimes) {
    zero = std::max({zero, rigidity_spread(p, aniso, flat, grid), rigidity_spread(p, iso, iso_curved, grid)});
    positive = std::min(positive, rigidity_spread(p, aniso, curved, grid));
  }
  return {zero < 1e-12 && positive > 1e-6,
          fmt("max spread quadratic/isotropic %.2e (tol 1e-12), min spread anisotropic %.3e (> 1e-6)", zero, positive)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"operator identity", operator_identity},
      {"c0 identity", c0_identity},
      {"g anchors", g_anchors},
      {"rank-one eigen/sigma consistency", rank_one},
      {"shooting construction", shooting},
      {"subsolution certificate", subsolution_certificate},
      {"comparison and symmetry", comparison_symmetry},
      {"decay law", decay_law},
      {"exact Monge-Ampere", exact_ma},
      {"exact isotropic inward integrator", inward_integrator},
      {"isotropic roots", isotropic_roots},
      {"delta0 machinery", delta0_machinery},
      {"rigidity probe", rigidity},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", k - failed, k);
  return failed == 0 ? 0 : 1;
}
