// mgg: solve, verify, tabulate and classify generalized-symmetric solutions.
//
// Exit codes: 0 pass, 1 verification failure, 2 not admissible,
// 3 invalid input or I/O.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mgg/mgg.hpp"

namespace {

using mgg::json;

struct Options {
  std::string spec;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::string checks;
  std::size_t rays = 0;
  std::size_t points = 41;
};

// Input is either a problem spec or a solution artifact.
struct Loaded {
  std::optional<mgg::ProblemSpec> spec;
  std::optional<mgg::PuncturedSolution> solution;
  std::optional<mgg::SolveSummary> summary;
  mgg::Sampler sampler;
};

mgg::Sampler apply_sampler(mgg::Sampler s, const Options& o) {
  if (o.seed) s.seed = *o.seed;
  if (o.samples) s.count = *o.samples;
  return s;
}

Loaded load(const Options& o, bool need_solution) {
  const json j = mgg::read_json_file(o.spec);
  Loaded l;
  if (j.value("schema", std::string()) == mgg::kSolutionSchema) {
    l.solution = mgg::solution_from_json(j);
    l.sampler = apply_sampler({}, o);
    return l;
  }
  l.spec = mgg::parse_spec(j);
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw mgg::InvalidInput("--tol must be positive");
    l.spec->controls.mu_tol = *o.tol;
  }
  l.sampler = apply_sampler(l.spec->sampler, o);
  if (need_solution) {
    auto outcome = mgg::solve_spec(*l.spec);
    l.solution = std::move(outcome.solution);
    l.summary = outcome.summary;
  }
  return l;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    mgg::write_text_file(o.out, text);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

int cmd_solve(const Options& o) {
  Loaded l = load(o, true);
  const auto& sol = *l.solution;
  const bool subsolution = sol.kind() == mgg::SolutionKind::Subsolution;
  const auto res = mgg::residual_check(sol, l.sampler, subsolution ? mgg::ResidualMode::AtLeast
                                                                   : mgg::ResidualMode::Equality);
  json summary = mgg::summary_json(*l.summary);
  summary["residual"] = {{"mode", res.name}, {"measured", res.measured}, {"pass", res.ok()}};
  if (!o.out.empty()) {
    mgg::write_text_file(o.out, mgg::solution_json(sol).dump(1) + "\n");
    summary["artifact"] = o.out;
  }
  if (o.format == "table") {
    for (auto it = summary.begin(); it != summary.end(); ++it) {
      std::cout << std::left << std::setw(16) << it.key() << it.value().dump() << '\n';
    }
  } else {
    std::cout << summary.dump(2) << '\n';
  }
  return res.ok() ? 0 : 1;
}

std::vector<std::string> split_checks(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_verify(const Options& o) {
  Loaded l = load(o, true);
  const auto& sol = *l.solution;
  std::vector<std::string> names = o.checks.empty() ? mgg::default_checks(sol) : split_checks(o.checks);
  if (o.checks == "all") names = mgg::all_check_names();
  const auto rep = mgg::verify(sol, names, l.sampler);
  std::string text;
  if (o.format == "json") {
    text = mgg::report_json(rep).dump(2) + "\n";
  } else if (o.format == "csv") {
    text = mgg::report_csv(rep);
  } else {
    text = mgg::report_table(rep);
  }
  emit(o, text);
  return rep.pass() ? 0 : 1;
}

json exponent_entry(const mgg::OperatorParams& p, const std::vector<double>& eig) {
  json e{{"regime", std::string(mgg::to_string(p.regime))}, {"tau_over_pi", p.tau / std::numbers::pi},
         {"C0", p.C0}};
  if (p.regime == mgg::Regime::MongeAmpere) {
    e["delta0"] = p.n;
    e["admissible"] = p.n > 2;
    e["note"] = "tau = 0: decay exponent n from the closed form";
    return e;
  }
  const auto d = mgg::delta0(p, eig);
  e["delta0"] = d.delta0;
  e["admissible"] = d.admissible;
  e["level_defect"] = d.level_defect;
  e["sigma"] = mgg::SigmaTable(eig).sigma();
  json xi = json::array();
  for (const auto& b : mgg::xi_bounds(eig)) {
    xi.push_back({{"lower", b.lower}, {"upper", b.upper}, {"argmin", b.argmin}, {"argmax", b.argmax}});
  }
  e["xi_bounds"] = xi;
  if (!d.ck.empty()) {
    e["quotient_argument"] = d.quotient_argument;
    e["ck"] = d.ck;
    e["xi_selected"] = d.xi;
  }
  if (p.regime == mgg::Regime::LogQuotient) e["mechanism"] = mgg::admissibility(p, eig).mechanism;
  return e;
}

int cmd_exponents(const Options& o) {
  Loaded l = load(o, false);
  if (!l.spec) throw mgg::InvalidInput("exponents needs a problem spec");
  const auto& eig = l.spec->model.eigvals;
  json rows = json::array();
  rows.push_back(exponent_entry(l.spec->params, eig));
  for (const auto& p : l.spec->extra_regimes) rows.push_back(exponent_entry(p, eig));
  std::ostringstream os;
  if (o.format == "json") {
    os << json{{"eigenvalues", eig}, {"regimes", rows}}.dump(2) << '\n';
  } else if (o.format == "csv") {
    os << "regime,tau_over_pi,C0,delta0,admissible\n";
    for (const auto& r : rows) {
      os << r["regime"].get<std::string>() << ',' << fmt(r["tau_over_pi"].get<double>()) << ','
         << fmt(r["C0"].get<double>()) << ',' << fmt(r["delta0"].get<double>()) << ','
         << (r["admissible"].get<bool>() ? "yes" : "no") << '\n';
    }
  } else {
    for (const auto& r : rows) {
      os << r["regime"].get<std::string>() << "  delta0 = " << fmt(r["delta0"].get<double>())
         << (r["admissible"].get<bool>() ? "  (admissible)" : "  (not admissible)") << '\n';
      if (r.contains("xi_bounds")) {
        int k = 1;
        for (const auto& b : r["xi_bounds"]) {
          os << "  xi_" << k++ << "  [" << fmt(b["lower"].get<double>()) << ", "
             << fmt(b["upper"].get<double>()) << "]\n";
        }
      }
      if (r.contains("ck")) {
        os << "  C = " << fmt(r["quotient_argument"].get<double>()) << "\n";
        for (std::size_t k = 0; k < r["ck"].size(); ++k) {
          os << "  k=" << k << "  c_k = " << fmt(r["ck"][k].get<double>())
             << "  sigma_k = " << fmt(r["sigma"][k].get<double>())
             << "  xi = " << fmt(r["xi_selected"][k].get<double>()) << '\n';
        }
      }
    }
  }
  emit(o, os.str());
  return 0;
}

int cmd_classify(const Options& o) {
  Loaded l = load(o, false);
  mgg::OperatorParams params;
  std::vector<double> eig;
  std::optional<mgg::Profile> profile;
  if (l.solution) {
    params = l.solution->params();
    eig = l.solution->model().eigvals;
    profile = l.solution->profile();
  } else {
    params = l.spec->params;
    eig = l.spec->model.eigvals;
    if (params.regime == mgg::Regime::LogQuotient || params.regime == mgg::Regime::MongeAmpere) {
      profile = mgg::solve_spec(*l.spec).solution.profile();
    }
  }
  json out{{"regime", std::string(mgg::to_string(params.regime))}, {"n", params.n}, {"C0", params.C0}};
  try {
    const auto root = mgg::isotropic_root(params);
    out["isotropic_root"] = {{"value", root.value},
                             {"printed_closed_form", root.closed_form},
                             {"residual", root.residual},
                             {"closed_form_consistent", root.closed_form_consistent}};
  } catch (const mgg::Unattainable& e) {
    out["isotropic_root"] = {{"unattainable", e.what()}};
  }
  const bool isotropic = eig.front() == eig.back();
  if (params.regime == mgg::Regime::MongeAmpere) {
    out["rigidity"] = {{"note", "no probe for tau = 0"}};
  } else {
    const mgg::Profile prof = profile ? *profile : mgg::Profile(mgg::RadialProfile::constant(0.0));
    const bool quadratic = mgg::profile_is_constant(prof);
    const auto grid = mgg::log_grid(1e-3, 1e6, 91);
    const double spread = mgg::rigidity_spread(params, eig, prof, grid);
    std::string verdict = "anisotropic A with non-quadratic profile: per-axis identity fails";
    if (quadratic) verdict = "quadratic profile";
    if (isotropic) verdict = "isotropic A";
    out["rigidity"] = {{"spread", spread}, {"isotropic", isotropic}, {"quadratic", quadratic},
                       {"verdict", verdict}};
  }
  if (o.format == "table") {
    std::ostringstream os;
    for (auto it = out.begin(); it != out.end(); ++it) os << std::left << std::setw(16) << it.key() << it.value().dump() << '\n';
    emit(o, os.str());
  } else {
    emit(o, out.dump(2) + "\n");
  }
  return 0;
}

int cmd_tabulate(const Options& o) {
  Loaded l = load(o, true);
  const auto& sol = *l.solution;
  std::ostringstream os;
  os << std::setprecision(17);
  if (o.rays == 0) {
    os << "s,psi,dpsi,U\n";
    std::vector<double> grid{0.0};
    for (double s : mgg::log_grid(1e-4, 1e8, std::max<std::size_t>(o.points, 2))) grid.push_back(s);
    for (double s : grid) {
      const auto smp = mgg::profile_sample(sol.profile(), s);
      os << s << ',' << smp.psi << ',' << smp.dpsi << ',' << smp.U << '\n';
    }
  } else {
    os << "ray,r,s,psi,dpsi,U,u,gap,lambda_min,G_residual\n";
    mgg::Sampler dirs = l.sampler;
    dirs.count = o.rays;
    std::size_t k = 0;
    for (const auto& d : dirs.directions(sol.n())) {
      for (double r : mgg::log_grid(1e-2, 1e3, std::max<std::size_t>(o.points, 2))) {
        const Eigen::VectorXd x = d * r;
        const double s = sol.level(x);
        const auto smp = mgg::profile_sample(sol.profile(), s);
        const auto res = mgg::operator_residual(sol, x);
        os << k << ',' << r << ',' << s << ',' << smp.psi << ',' << smp.dpsi << ',' << smp.U << ','
           << sol.u(x) << ',' << sol.comparison_gap(x) << ',' << sol.spectrum(x).min() << ','
           << res.eigen_path << '\n';
      }
      ++k;
    }
  }
  emit(o, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized-symmetric solutions of the tau-family Hessian equations"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--spec", o.spec, "problem spec or solution artifact (JSON)")->required();
    sub->add_option("--out", o.out, "output file");
    sub->add_option("--format", o.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--seed", o.seed, "sampler seed");
    sub->add_option("--samples", o.samples, "sample count");
    sub->add_option("--tol", o.tol, "shooting tolerance on mu");
  };

  auto* solve = app.add_subcommand("solve", "construct a solution and write the artifact");
  add_common(solve);
  auto* verify = app.add_subcommand("verify", "run verification checks");
  add_common(verify);
  verify->add_option("--checks", o.checks, "comma-separated check names, or 'all'");
  auto* exponents = app.add_subcommand("exponents", "decay exponent delta0 and its ingredients");
  add_common(exponents);
  auto* classify = app.add_subcommand("classify", "isotropic root and rigidity probe");
  add_common(classify);
  auto* tabulate = app.add_subcommand("tabulate", "CSV of the profile or of x-space rays");
  add_common(tabulate);
  tabulate->add_option("--rays", o.rays, "number of random rays (0: profile table)");
  tabulate->add_option("--points", o.points, "grid points per table or ray");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*verify) return cmd_verify(o);
    if (*exponents) return cmd_exponents(o);
    if (*classify) return cmd_classify(o);
    if (*tabulate) return cmd_tabulate(o);
  } catch (const mgg::NotAdmissible& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const mgg::Error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const mgg::json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << '\n';
    return 3;
  }
  return 3;
}
