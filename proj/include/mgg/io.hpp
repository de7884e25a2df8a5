#pragma once

// JSON problem specs, solution artifacts and reports. Doubles are written in
// shortest round-trip form, so artifacts reload bit-for-bit.

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mgg/errors.hpp"
#include "mgg/odeflow.hpp"
#include "mgg/operators.hpp"
#include "mgg/solution.hpp"
#include "mgg/verify.hpp"

namespace mgg {

using json = nlohmann::json;

inline constexpr const char* kSpecSchema = "mgg-spec/1";
inline constexpr const char* kSolutionSchema = "mgg-solution/1";
inline constexpr const char* kReportSchema = "mgg-report/1";

enum class SolveKind { Auto, Subsolution, ExactIsotropic, ExactMA, Quadratic };

/// Problem description: operator, A (matrix or eigenvalues), affine data and
/// solver controls.
struct ProblemSpec {
  OperatorParams params;
  QuadraticModel model;
  SolveKind kind = SolveKind::Auto;
  double kappa = 0.0;  // exact isotropic tail constant
  double c1 = 0.0;     // Monge-Ampere closed-form constant
  Controls controls;
  Sampler sampler;
  std::vector<OperatorParams> extra_regimes;  // exponents table
};

namespace detail {

inline double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw InvalidInput(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

inline std::vector<double> get_vector(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw InvalidInput("expected an array of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

inline Eigen::MatrixXd get_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("A must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = get_vector(j.at(static_cast<std::size_t>(i)));
    if (static_cast<Eigen::Index>(row.size()) != n) throw InvalidInput("A must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

inline json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

inline json vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

/// tau from a named regime, tau_over_pi, or b (LogQuotient: b = sqrt(a^2 - 1),
/// ArcTanShifted: b = sqrt(1 - a^2), with a = cot tau).
inline double tau_from(const json& j) {
  constexpr double pi = std::numbers::pi;
  if (j.contains("tau_over_pi")) return get_number(j, "tau_over_pi", 0.0) * pi;
  if (!j.contains("regime")) throw InvalidInput("spec needs regime or tau_over_pi");
  const Regime r = regime_from_string(j.at("regime").get<std::string>());
  switch (r) {
    case Regime::MongeAmpere: return 0.0;
    case Regime::InverseHarmonic: return pi / 4;
    case Regime::SpecialLagrangian: return pi / 2;
    case Regime::LogQuotient:
    case Regime::ArcTanShifted: {
      if (!j.contains("b")) throw InvalidInput("regime " + std::string(to_string(r)) + " needs b or tau_over_pi");
      const double b = get_number(j, "b", 0.0);
      if (!(b > 0.0)) throw InvalidInput("b must be positive");
      if (r == Regime::LogQuotient) return std::atan2(1.0, std::sqrt(b * b + 1.0));
      if (!(b < 1.0)) throw InvalidInput("ArcTanShifted needs b < 1");
      return std::atan2(1.0, std::sqrt(1.0 - b * b));
    }
  }
  return 0.0;
}

inline OperatorParams params_for(double tau, const std::vector<double>& eig,
                                 std::optional<double> C0) {
  const int n = static_cast<int>(eig.size());
  OperatorParams p = OperatorParams::from_tau(tau, n, 0.0);
  if (C0) return OperatorParams::from_tau(tau, n, *C0);
  return OperatorParams::from_tau(tau, n, eval_G(p, Spectrum(eig)));
}

inline SolveKind solve_kind_from(const std::string& s) {
  if (s == "auto") return SolveKind::Auto;
  if (s == "subsolution") return SolveKind::Subsolution;
  if (s == "exact_isotropic") return SolveKind::ExactIsotropic;
  if (s == "exact_ma") return SolveKind::ExactMA;
  if (s == "quadratic") return SolveKind::Quadratic;
  throw InvalidInput("unknown kind: " + s);
}

}  // namespace detail

inline ProblemSpec parse_spec(const json& j) {
  if (!j.is_object()) throw InvalidInput("spec must be a JSON object");
  if (j.value("schema", std::string(kSpecSchema)) != kSpecSchema) {
    throw InvalidInput("unsupported spec schema");
  }
  const bool has_A = j.contains("A");
  const bool has_eig = j.contains("eigenvalues");
  if (has_A == has_eig) throw InvalidInput("give exactly one of A and eigenvalues");

  ProblemSpec spec;
  Eigen::VectorXd beta;
  if (j.contains("beta")) {
    const auto b = detail::get_vector(j.at("beta"));
    beta = Eigen::VectorXd::Map(b.data(), static_cast<Eigen::Index>(b.size()));
  }
  const double u0 = detail::get_number(j, "u0", 0.0);
  const double c = detail::get_number(j, "c", u0);
  spec.model = has_A ? QuadraticModel::from_matrix(detail::get_matrix(j.at("A")), beta, c, u0)
                     : QuadraticModel::diagonal(detail::get_vector(j.at("eigenvalues")), beta, c, u0);
  if (j.contains("n") && j.at("n").get<int>() != spec.model.n()) {
    throw InvalidInput("n does not match A");
  }
  std::optional<double> C0;
  if (j.contains("C0")) C0 = detail::get_number(j, "C0", 0.0);
  spec.params = detail::params_for(detail::tau_from(j), spec.model.eigvals, C0);

  spec.kind = detail::solve_kind_from(j.value("kind", std::string("auto")));
  spec.kappa = detail::get_number(j, "kappa", 0.0);
  spec.c1 = detail::get_number(j, "c1", 0.0);
  if (spec.model.c < spec.model.u0) throw InvalidInput("c must be >= u0");

  if (j.contains("controls")) {
    const json& k = j.at("controls");
    Controls& ct = spec.controls;
    ct.rtol = detail::get_number(k, "rtol", ct.rtol);
    ct.atol = detail::get_number(k, "atol", ct.atol);
    ct.max_dt = detail::get_number(k, "max_dt", ct.max_dt);
    ct.tail_threshold = detail::get_number(k, "tail_threshold", ct.tail_threshold);
    ct.tail_min_s = detail::get_number(k, "tail_min_s", ct.tail_min_s);
    ct.mu_tol = detail::get_number(k, "mu_tol", ct.mu_tol);
    ct.s_max = detail::get_number(k, "s_max", ct.s_max);
    ct.s_min = detail::get_number(k, "s_min", ct.s_min);
    ct.max_doublings = static_cast<int>(detail::get_number(k, "max_doublings", ct.max_doublings));
    for (double v : {ct.rtol, ct.atol, ct.max_dt, ct.tail_threshold, ct.tail_min_s, ct.mu_tol,
                     ct.s_max, ct.s_min}) {
      if (!(v > 0.0)) throw InvalidInput("tolerances and limits must be positive");
    }
  }
  if (j.contains("sampler")) {
    const json& k = j.at("sampler");
    spec.sampler.seed = k.value("seed", spec.sampler.seed);
    spec.sampler.count = k.value("samples", spec.sampler.count);
  }
  if (j.contains("regimes")) {
    for (const auto& r : j.at("regimes")) {
      json sub = r.is_object() ? r : json{{"regime", r}};
      std::optional<double> rc0;
      if (sub.contains("C0")) rc0 = detail::get_number(sub, "C0", 0.0);
      spec.extra_regimes.push_back(detail::params_for(detail::tau_from(sub), spec.model.eigvals, rc0));
    }
  }
  return spec;
}

struct SolveSummary {
  SolutionKind kind = SolutionKind::Quadratic;
  double alpha = 1.0;
  double mu = 0.0;
  double delta0 = std::numeric_limits<double>::quiet_NaN();
  double c0 = std::numeric_limits<double>::quiet_NaN();
  double g_prime_at_one = std::numeric_limits<double>::quiet_NaN();
  double kappa = 0.0;
  int evaluations = 0;
};

struct SolveOutcome {
  PuncturedSolution solution;
  SolveSummary summary;
};

/// Dispatches a spec to the shooting construction, the exact isotropic
/// integrator, the Monge-Ampere closed form or the quadratic solution.
inline SolveOutcome solve_spec(const ProblemSpec& spec) {
  const OperatorParams& p = spec.params;
  SolveKind kind = spec.kind;
  if (kind == SolveKind::Auto) {
    if (p.regime == Regime::MongeAmpere) {
      kind = SolveKind::ExactMA;
    } else if (p.regime == Regime::LogQuotient) {
      kind = SolveKind::Subsolution;
    } else {
      kind = SolveKind::Quadratic;
    }
  }
  SolveSummary sum;
  auto fill_lq = [&](const GData& gd) {
    sum.delta0 = gd.decay().delta0;
    sum.c0 = gd.c0();
    sum.g_prime_at_one = gd.g_prime_at_one();
  };
  switch (kind) {
    case SolveKind::Subsolution: {
      if (p.n < 3) throw InvalidInput("dimension must be at least 3");
      const GData gd = gdata_for(p, spec.model);
      fill_lq(gd);
      auto res = solve_subsolution(p, spec.model, spec.controls);
      sum.kind = res.solution.kind();
      sum.alpha = res.shot.alpha;
      sum.mu = res.shot.mu;
      sum.evaluations = res.shot.evaluations;
      sum.kappa = std::get<RadialProfile>(res.solution.profile()).kappa();
      return {std::move(res.solution), sum};
    }
    case SolveKind::ExactIsotropic: {
      const GData gd = gdata_for(p, spec.model);
      fill_lq(gd);
      auto sol = exact_isotropic_solution(p, spec.model, spec.kappa, spec.controls);
      sum.kind = sol.kind();
      sum.alpha = std::numeric_limits<double>::infinity();
      if (sol.kind() == SolutionKind::Quadratic) sum.alpha = 1.0;
      sum.mu = profile_mu(sol.profile());
      sum.kappa = spec.kappa;
      return {std::move(sol), sum};
    }
    case SolveKind::ExactMA: {
      if (p.n < 3) throw InvalidInput("dimension must be at least 3");
      auto sol = ma_solution(p, spec.model, spec.c1);
      sum.kind = sol.kind();
      sum.delta0 = p.n;
      sum.g_prime_at_one = -0.5 * p.n;
      sum.alpha = sol.kind() == SolutionKind::Quadratic ? 1.0 : std::numeric_limits<double>::infinity();
      sum.mu = profile_mu(sol.profile());
      sum.kappa = spec.c1 * std::pow(2.0, -0.5 * p.n) / p.n;
      return {std::move(sol), sum};
    }
    case SolveKind::Quadratic:
    case SolveKind::Auto: {
      if (spec.model.c != spec.model.u0) {
        throw Unsupported("only the quadratic solution (c = u0) is constructed for " +
                          std::string(to_string(p.regime)));
      }
      const double level = eval_G(p, Spectrum(spec.model.eigvals));
      if (std::abs(level - p.C0) > 1e-8) throw Incompatible("G(lambda(A)) differs from C0");
      if (p.regime == Regime::LogQuotient) fill_lq(gdata_for(p, spec.model));
      auto sol = quadratic_solution(p, spec.model);
      sum.kind = sol.kind();
      return {std::move(sol), sum};
    }
  }
  throw InvalidInput("unreachable");
}

// ---- artifacts ------------------------------------------------------------

inline json params_json(const OperatorParams& p) {
  json j{{"regime", std::string(to_string(p.regime))}, {"tau", p.tau}, {"n", p.n}, {"C0", p.C0}};
  if (p.regime == Regime::LogQuotient || p.regime == Regime::ArcTanShifted) {
    j["a"] = p.a;
    j["b"] = p.b;
  }
  return j;
}

inline OperatorParams params_from_json(const json& j) {
  const Regime r = regime_from_string(j.at("regime").get<std::string>());
  const int n = j.at("n").get<int>();
  const double C0 = j.at("C0").get<double>();
  if (r == Regime::LogQuotient || r == Regime::ArcTanShifted) {
    OperatorParams p = OperatorParams::with_constants(r, j.at("a").get<double>(), j.at("b").get<double>(), n, C0);
    p.tau = j.at("tau").get<double>();
    return p;
  }
  return OperatorParams::of(r, n, C0);
}

inline json model_json(const QuadraticModel& m) {
  return json{{"A", detail::matrix_json(m.A)},
              {"eigenvalues", m.eigvals},
              {"O", detail::matrix_json(m.O)},
              {"beta", detail::vector_json(m.beta)},
              {"c", m.c},
              {"u0", m.u0}};
}

inline QuadraticModel model_from_json(const json& j) {
  QuadraticModel m;
  m.A = detail::get_matrix(j.at("A"));
  m.eigvals = detail::get_vector(j.at("eigenvalues"));
  m.O = detail::get_matrix(j.at("O"));
  const auto b = detail::get_vector(j.at("beta"));
  m.beta = Eigen::VectorXd::Map(b.data(), static_cast<Eigen::Index>(b.size()));
  m.c = j.at("c").get<double>();
  m.u0 = j.at("u0").get<double>();
  if (m.A.rows() != static_cast<Eigen::Index>(m.eigvals.size()) || m.O.rows() != m.A.rows() ||
      m.beta.size() != m.A.rows()) {
    throw InvalidInput("model dimensions disagree");
  }
  return m;
}

namespace detail {

// JSON has no infinity; a null stands for +inf.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace detail

inline json profile_json(const Profile& prof) {
  if (const auto* ma = std::get_if<MaProfile>(&prof)) {
    return json{{"type", "ma_closed_form"}, {"n", ma->n()}, {"c1", ma->c1()}, {"u0", ma->u0()}};
  }
  const auto& r = std::get<RadialProfile>(prof);
  const auto& p = r.parts();
  json nodes{{"s", json::array()}, {"phi", json::array()}, {"dpsi", json::array()},
             {"ddpsi", json::array()}, {"excess", json::array()}};
  for (const auto& nd : p.nodes) {
    nodes["s"].push_back(nd.s);
    nodes["phi"].push_back(nd.phi);
    nodes["dpsi"].push_back(nd.dpsi);
    nodes["ddpsi"].push_back(nd.ddpsi);
    nodes["excess"].push_back(nd.excess);
  }
  return json{{"type", "radial"},
              {"clock", p.clock == RadialProfile::Clock::Shifted ? "shifted" : "plain"},
              {"alpha", detail::finite_or_null(p.alpha)},
              {"u0", p.u0},
              {"kappa", p.kappa},
              {"tail_exponent", p.tail_exponent},
              {"head_coef", p.head_coef},
              {"head_exponent", p.head_exponent},
              {"mu", detail::finite_or_null(p.mu)},
              {"nodes", nodes}};
}

inline Profile profile_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ma_closed_form") {
    return MaProfile(j.at("n").get<int>(), j.at("c1").get<double>(), j.at("u0").get<double>());
  }
  if (type != "radial") throw InvalidInput("unknown profile type: " + type);
  RadialProfile::Parts p;
  const std::string clock = j.at("clock").get<std::string>();
  if (clock != "shifted" && clock != "plain") throw InvalidInput("unknown clock: " + clock);
  p.clock = clock == "shifted" ? RadialProfile::Clock::Shifted : RadialProfile::Clock::Plain;
  p.alpha = detail::number_or_inf(j.at("alpha"));
  p.u0 = j.at("u0").get<double>();
  p.kappa = j.at("kappa").get<double>();
  p.tail_exponent = j.at("tail_exponent").get<double>();
  p.head_coef = j.at("head_coef").get<double>();
  p.head_exponent = j.at("head_exponent").get<double>();
  p.mu = detail::number_or_inf(j.at("mu"));
  const json& nodes = j.at("nodes");
  const auto s = detail::get_vector(nodes.at("s"));
  const auto phi = detail::get_vector(nodes.at("phi"));
  const auto dpsi = detail::get_vector(nodes.at("dpsi"));
  const auto ddpsi = detail::get_vector(nodes.at("ddpsi"));
  const auto excess = detail::get_vector(nodes.at("excess"));
  const std::size_t m = s.size();
  if (phi.size() != m || dpsi.size() != m || ddpsi.size() != m || excess.size() != m) {
    throw InvalidInput("profile node arrays differ in length");
  }
  for (std::size_t i = 0; i < m; ++i) p.nodes.push_back({s[i], phi[i], dpsi[i], ddpsi[i], excess[i]});
  return RadialProfile::from_parts(std::move(p));
}

inline json solution_json(const PuncturedSolution& sol) {
  return json{{"schema", kSolutionSchema},
              {"kind", std::string(to_string(sol.kind()))},
              {"params", params_json(sol.params())},
              {"model", model_json(sol.model())},
              {"profile", profile_json(sol.profile())}};
}

inline PuncturedSolution solution_from_json(const json& j) {
  if (j.value("schema", std::string()) != kSolutionSchema) {
    throw InvalidInput("not a solution artifact");
  }
  return PuncturedSolution(model_from_json(j.at("model")), profile_from_json(j.at("profile")),
                           params_from_json(j.at("params")),
                           kind_from_string(j.at("kind").get<std::string>()));
}

inline json summary_json(const SolveSummary& s) {
  return json{{"kind", std::string(to_string(s.kind))},
              {"alpha", detail::finite_or_null(s.alpha)},
              {"mu", s.mu},
              {"delta0", std::isnan(s.delta0) ? json(nullptr) : json(s.delta0)},
              {"c0", std::isnan(s.c0) ? json(nullptr) : json(s.c0)},
              {"g_prime_at_one", std::isnan(s.g_prime_at_one) ? json(nullptr) : json(s.g_prime_at_one)},
              {"tail_constant", s.kappa},
              {"mu_evaluations", s.evaluations}};
}

inline json report_json(const VerificationReport& rep) {
  json checks = json::array();
  for (const auto& e : rep.checks) {
    checks.push_back(json{{"name", e.name},
                          {"status", std::string(to_string(e.status))},
                          {"measured", e.measured},
                          {"tolerance", e.tolerance},
                          {"samples", e.samples},
                          {"note", e.note}});
  }
  return json{{"schema", kReportSchema}, {"overall", rep.pass() ? "pass" : "fail"}, {"checks", checks}};
}

inline std::string report_table(const VerificationReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "check" << std::setw(7) << "status" << std::setw(15)
     << "measured" << std::setw(12) << "tolerance" << std::setw(9) << "samples" << "note\n";
  for (const auto& e : rep.checks) {
    os << std::left << std::setw(18) << e.name << std::setw(7) << to_string(e.status)
       << std::setw(15) << std::setprecision(6) << e.measured << std::setw(12) << e.tolerance
       << std::setw(9) << e.samples << e.note << '\n';
  }
  os << "overall: " << (rep.pass() ? "pass" : "fail") << '\n';
  return os.str();
}

inline std::string report_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << std::setprecision(17) << "name,status,measured,tolerance,samples\n";
  for (const auto& e : rep.checks) {
    os << e.name << ',' << to_string(e.status) << ',' << e.measured << ',' << e.tolerance << ','
       << e.samples << '\n';
  }
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed: " + path);
}

}  // namespace mgg
