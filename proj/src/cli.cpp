#include "inls/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "inls/dynamics.hpp"
#include "inls/errors.hpp"
#include "inls/exponents.hpp"
#include "inls/ground_state.hpp"
#include "inls/io.hpp"
#include "inls/parallel.hpp"

namespace inls {

namespace {

namespace fs = std::filesystem;
using exponents::CriticalityParams;
using exponents::Theorem;
using ojson = nlohmann::ordered_json;

const Theorem kTheorems[] = {Theorem::local_subcritical, Theorem::local_critical,
                             Theorem::continuous_dependence, Theorem::blowup};

std::string describe_check(const exponents::Check& c) {
  std::string out = c.condition;
  if (!c.values.empty()) {
    out += "  [";
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      if (i) out += ", ";
      out += c.values[i].first + " = " + c.values[i].second.str();
    }
    out += "]";
  }
  return out;
}

void print_verdict(std::ostream& out, const exponents::Verdict& v, bool detailed) {
  out << exponents::theorem_id(v.theorem) << ": " << (v.holds ? "holds" : "fails");
  if (const auto* f = v.first_failure()) out << " at \"" << f->condition << "\"";
  out << '\n';
  if (!detailed) return;
  for (const auto& c : v.checks) out << "  [" << (c.holds ? "ok  " : "FAIL") << "] " << describe_check(c) << '\n';
}

std::string gamma_text(const ExtendedRational& p, int n) {
  try {
    return exponents::gamma_of(p, n).str();
  } catch (const std::exception&) {
    return "-";
  }
}

void print_pair_row(std::ostream& out, const ExtendedRational& p, int n, const std::string& note = "") {
  const bool ok = exponents::is_admissible(p, n);
  out << "  " << std::left << std::setw(12) << p.str() << std::setw(12) << (ok ? gamma_text(p, n) : "-")
      << (ok ? "admissible" : "not admissible");
  if (!note.empty()) out << "  (" << note << ")";
  out << '\n';
}

ExtendedRational parse_extended(const std::string& text) {
  if (text == "inf" || text == "infinity") return ExtendedRational::infinity();
  return Rational::parse(text);
}

exponents::HypothesisOptions parse_options(bool polynomial, const std::string& symmetry) {
  return {polynomial, exponents::parse_symmetry(symmetry)};
}

int cmd_check(std::ostream& out, int n, const std::string& s_text, const std::optional<std::string>& b_text,
              const std::string& sigma_text, const std::string& theorem_text, bool polynomial,
              const std::string& symmetry) {
  CriticalityParams params;
  params.n = n;
  params.s = Rational::parse(s_text);
  const Theorem requested = exponents::parse_theorem(theorem_text);
  const auto options = parse_options(polynomial, symmetry);
  const bool critical = sigma_text == "auto" || sigma_text == "critical";
  if (critical && params.s >= Rational(n) / Rational(2)) {
    out << "sigma_s = inf: s = " << params.s.str() << " is not below n/2 = " << (Rational(n) / Rational(2)).str()
        << ", so there is no finite critical power.\n"
        << "Pass an explicit --sigma to evaluate the hypotheses anyway.\n";
    return kExitHypothesis;
  }
  if (!b_text) throw ParseError("--b is required");
  params.b = Rational::parse(*b_text);
  if (!critical) params.sigma = Rational::parse(sigma_text);
  exponents::validate(params);

  const ExtendedRational sigma_s = exponents::sigma_critical(n, params.s, params.b);
  const ExtendedRational sigma = exponents::resolved_sigma(params);
  out << "n = " << n << ", s = " << params.s.str() << ", b = " << params.b.str() << ", sigma = " << sigma.str()
      << (critical ? " (critical)" : "") << '\n';
  out << "sigma_s = " << sigma_s.str() << '\n';

  bool requested_holds = false;
  for (Theorem t : kTheorems) {
    const auto v = exponents::theorem_hypotheses(t, params, options);
    print_verdict(out, v, t == requested);
    if (t == requested) requested_holds = v.holds;
  }

  const auto local = exponents::theorem_hypotheses(Theorem::local_critical, params, options);
  out << "admissible pairs (p, gamma(p)):\n";
  print_pair_row(out, Rational(2), n, "energy");
  if (local.holds) {
    const auto w = exponents::working_r(params);
    out << "working r = " << w.r.str();
    if (w.epsilon) out << " (epsilon = " << w.epsilon->str() << ")";
    out << "\ngamma(r) = " << gamma_text(w.r, n) << '\n';
    const ExtendedRational rbar = exponents::dual_exponent(params, w.r, w.epsilon);
    out << "companion r_bar = " << rbar.str() << ", gamma(r_bar) = " << gamma_text(rbar, n) << '\n';
    out << "duality identity: " << (exponents::dual_pair_identity(params, w.r, w.epsilon) ? "exact" : "FAILS")
        << '\n';
    out << "time Hoelder identity: "
        << (exponents::holder_time_identity(params, w.r, w.epsilon) ? "exact" : "FAILS") << '\n';
    if (const auto p = exponents::nonlinear_estimate_p(w.r, params.s, sigma.value(), n)) {
      out << "nonlinear estimate p = " << p->str() << '\n';
    }
    print_pair_row(out, w.r, n, "working r");
    print_pair_row(out, rbar, n, "companion");
  }
  if (n >= 3) print_pair_row(out, Rational(2 * n, n - 2), n, "endpoint");

  const auto region = exponents::region_comparison(params);
  out << "region: " << exponents::region_name(region.region) << " (earlier range b < "
      << region.prior_b_bound.str() << ", extended range b < " << region.extended_b_bound.str() << ")\n";
  return requested_holds ? kExitOk : kExitHypothesis;
}

int cmd_pairs(std::ostream& out, int n, const std::vector<std::string>& p_texts) {
  if (n < 1) throw ParseError("--n must be a positive dimension");
  std::vector<ExtendedRational> ps;
  for (const auto& t : p_texts) ps.push_back(parse_extended(t));
  if (ps.empty()) {
    ps.emplace_back(Rational(2));
    if (n >= 3) {
      const Rational end(2 * n, n - 2);
      ps.emplace_back((Rational(2) + end) / Rational(2));
      ps.emplace_back(end);
    } else {
      ps.emplace_back(Rational(4));
      ps.emplace_back(Rational(8));
      if (n == 1) ps.push_back(ExtendedRational::infinity());
    }
  }
  out << "n = " << n << "\n  " << std::left << std::setw(12) << "p" << std::setw(12) << "gamma" << '\n';
  bool all = true;
  for (const auto& p : ps) {
    all = all && exponents::is_admissible(p, n);
    print_pair_row(out, p, n);
  }
  return all ? kExitOk : kExitHypothesis;
}

struct GroundStateRun {
  ground_state::GroundStateQuantities q;
  ground_state::GroundStateQuantities q2;
  double eps_spread;
  double chain_h1;
  double chain_energy;
  double g_argmax;
};

// Golden-section maximization of g on [0, 2‖W‖].
double argmax_g(const ground_state::GroundStateQuantities& q) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 2.0 * q.h1dot();
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  while (b - a > 1e-13 * q.h1dot()) {
    if (diagnostics::g_threshold(c, q) > diagnostics::g_threshold(d, q)) b = d;
    else a = c;
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return 0.5 * (a + b);
}

GroundStateRun ground_state_run(int n, double b, double eps, double tol) {
  ground_state::QuadratureSpec spec;
  spec.rel_tol = tol;
  GroundStateRun r;
  r.q = ground_state::compute_quantities(ground_state::GroundStateProfile(n, b, eps), spec);
  r.q2 = ground_state::compute_quantities(ground_state::GroundStateProfile(n, b, 2.0 * eps), spec);
  r.eps_spread = std::abs(r.q.c_hs - r.q2.c_hs) / r.q.c_hs;
  const double expo = -2.0 * (n - b) / (2.0 - b);
  const double h1_closed = std::pow(r.q.c_hs, expo);
  r.chain_h1 = std::abs(r.q.h1dot_sq - h1_closed) / h1_closed;
  const double e_closed = (2.0 - b) / (2.0 * (n - b)) * h1_closed;
  r.chain_energy = std::abs(r.q.energy - e_closed) / e_closed;
  r.g_argmax = std::abs(argmax_g(r.q) - r.q.h1dot()) / r.q.h1dot();
  return r;
}

ojson quantities_json(const ground_state::GroundStateQuantities& q) {
  return {{"n", q.n},
          {"b", q.b},
          {"sigma1", q.sigma1},
          {"h1dot_sq", q.h1dot_sq},
          {"h1dot", q.h1dot()},
          {"potential_integral", q.potential_integral},
          {"c_hs", q.c_hs},
          {"energy", q.energy},
          {"pohozaev_residual", q.pohozaev_residual()}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

int cmd_ground_state(std::ostream& out, int n, const std::string& b_text, double eps, double tol,
                     const std::string& out_dir, bool json) {
  const Rational b_exact = Rational::parse(b_text);
  if (n < 3) throw HypothesisError("n >= 3", "the explicit ground state needs n >= 3");
  if (b_exact < Rational(0) || b_exact >= Rational(2)) throw HypothesisError("0 <= b < 2", "b = " + b_exact.str());
  if (!(eps > 0.0)) throw ParseError("--eps must be > 0");
  if (!(tol > 0.0 && tol < 1e-3)) throw ParseError("--tol must lie in (0, 1e-3)");
  const double b = b_exact.to_double();
  const GroundStateRun r = ground_state_run(n, b, eps, tol);

  ojson rep;
  rep["command"] = "ground-state";
  rep["n"] = n;
  rep["b"] = b_exact.str();
  rep["eps"] = eps;
  rep["tol"] = tol;
  rep["quantities"] = quantities_json(r.q);
  rep["quantities_2eps"] = quantities_json(r.q2);
  rep["checks"] = {{"pohozaev_residual", r.q.pohozaev_residual()},
                   {"c_hs_eps_spread", r.eps_spread},
                   {"h1dot_sq_closed_form_residual", r.chain_h1},
                   {"energy_closed_form_residual", r.chain_energy},
                   {"g_argmax_residual", r.g_argmax}};

  std::ostringstream text;
  text << std::setprecision(17);
  text << "ground state n = " << n << ", b = " << b_exact.str() << ", eps = " << eps << '\n'
       << "  sigma1                 " << r.q.sigma1 << '\n'
       << "  |W|^2_H1               " << r.q.h1dot_sq << '\n'
       << "  int |x|^-b W^(s1+2)    " << r.q.potential_integral << '\n'
       << "  C_HS                   " << r.q.c_hs << '\n'
       << "  E(W)                   " << r.q.energy << '\n'
       << "  Pohozaev residual      " << r.q.pohozaev_residual() << '\n'
       << "  C_HS spread eps vs 2eps " << r.eps_spread << '\n'
       << "  closed form |W|^2      " << r.chain_h1 << '\n'
       << "  closed form E(W)       " << r.chain_energy << '\n'
       << "  argmax g vs |W|_H1     " << r.g_argmax << '\n';

  out << (json ? io::dump_json(rep) + "\n" : text.str());
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "report.json", io::dump_json(rep) + "\n");
    write_text(fs::path(out_dir) / "report.txt", text.str());
  }
  return kExitOk;
}

ojson record_json(const diagnostics::DiagnosticsRecord& r) {
  ojson j = {{"t", r.t},
             {"mass", r.mass},
             {"energy", r.energy},
             {"h1dot_sq", r.h1dot_sq},
             {"weighted_potential", r.weighted_potential},
             {"variance", r.variance ? ojson(*r.variance) : ojson(nullptr)},
             {"virial_rhs", r.virial_rhs},
             {"boundary_mass_fraction", r.boundary_mass_fraction},
             {"max_amp", r.max_amp}};
  return j;
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::numeric_limits<double>::min());
  return (b - a) / scale;
}

int cmd_simulate(std::ostream& out, const std::string& config_path, const std::string& out_root, bool quiet) {
  io::RunConfigFile cfg = io::load_config(config_path);
  if (!out_root.empty()) cfg.output.directory = out_root;
  const SimConfig sim = cfg.sim_config();
  const Field u0 = io::make_initial(cfg);
  const std::string canonical = io::serialize_config(cfg);
  const fs::path dir = io::create_run_directory(cfg.output.directory, canonical);
  write_text(dir / "config.json", canonical + "\n");

  ojson files = {{"config", (dir / "config.json").string()}};
  if (cfg.output.dump_fields) {
    io::save_field(dir / "field_start.bin", u0);
    files["field_start"] = (dir / "field_start.bin").string();
  }

  // Blow-up classification when the run falls in the energy-critical focusing scope.
  const auto symmetry = cfg.grid_kind == GridKind::radial ? exponents::Symmetry::radial
                                                          : exponents::Symmetry::finite_variance;
  const auto blowup_verdict = exponents::theorem_hypotheses(Theorem::blowup, cfg.params, {false, symmetry});
  std::optional<diagnostics::ThresholdReport> threshold;
  std::optional<ground_state::GroundStateQuantities> gs;
  if (blowup_verdict.holds && cfg.lambda == -1.0) {
    gs = ground_state::compute_quantities(
        ground_state::GroundStateProfile(cfg.params.n, cfg.params.b.to_double(), cfg.initial.eps));
    threshold = diagnostics::classify_blowup(u0, sim, *gs, symmetry);
  }

  const auto outcome = dynamics::run(sim, u0);

  {
    std::ofstream csv(dir / "series.csv");
    io::write_series(csv, outcome.series);
  }
  files["series"] = (dir / "series.csv").string();
  if (cfg.output.dump_fields) {
    io::save_field(dir / "field_end.bin", outcome.final_field);
    files["field_end"] = (dir / "field_end.bin").string();
  }

  const auto& first = outcome.series.front();
  const auto& last = outcome.series.back();
  ojson rep;
  rep["command"] = "simulate";
  rep["run_directory"] = dir.string();
  rep["params"] = {{"n", cfg.params.n},
                   {"s", cfg.params.s.str()},
                   {"b", cfg.params.b.str()},
                   {"sigma", cfg.sigma().str()},
                   {"lambda", cfg.lambda}};
  ojson verdicts = ojson::object();
  for (Theorem t : kTheorems) {
    const auto v = exponents::theorem_hypotheses(t, cfg.params, {false, symmetry});
    const auto* f = v.first_failure();
    verdicts[exponents::theorem_id(t)] = {{"holds", v.holds},
                                          {"first_failure", f ? ojson(f->condition) : ojson(nullptr)}};
  }
  rep["verdicts"] = verdicts;
  rep["termination"] = dynamics::termination_name(outcome.termination);
  rep["t_final"] = outcome.t_final;
  rep["steps"] = outcome.steps;
  rep["max_h1_ratio"] = outcome.max_h1_ratio;
  rep["initial"] = record_json(first);
  rep["final"] = record_json(last);
  rep["mass_drift"] = relative_change(first.mass, last.mass);
  rep["energy_drift"] = relative_change(first.energy, last.energy);
  if (gs) rep["ground_state"] = quantities_json(*gs);
  if (threshold) {
    rep["classification"] = {{"case", diagnostics::case_name(threshold->blowup_case)},
                             {"symmetry", exponents::symmetry_name(threshold->symmetry)},
                             {"e0", threshold->e0},
                             {"h1_0", threshold->h1_0},
                             {"e_w", threshold->e_w},
                             {"h1_w", threshold->h1_w},
                             {"delta", threshold->delta ? ojson(*threshold->delta) : ojson(nullptr)}};
  } else {
    rep["classification"] = nullptr;
  }
  rep["files"] = files;
  rep["config"] = ojson::parse(canonical);

  std::ostringstream text;
  text << std::setprecision(17);
  text << "run directory     " << dir.string() << '\n'
       << "params            n = " << cfg.params.n << ", s = " << cfg.params.s.str() << ", b = "
       << cfg.params.b.str() << ", sigma = " << cfg.sigma().str() << ", lambda = " << cfg.lambda << '\n'
       << "termination       " << dynamics::termination_name(outcome.termination) << '\n'
       << "t_final           " << outcome.t_final << '\n'
       << "steps             " << outcome.steps << '\n'
       << "max H1 ratio      " << outcome.max_h1_ratio << '\n'
       << "mass drift        " << relative_change(first.mass, last.mass) << '\n'
       << "energy drift      " << relative_change(first.energy, last.energy) << '\n';
  if (threshold) {
    text << "classification    " << diagnostics::case_name(threshold->blowup_case) << " (E(u0) = " << threshold->e0
         << ", E(W) = " << threshold->e_w << ", |u0|_H1 = " << threshold->h1_0 << ", |W|_H1 = " << threshold->h1_w
         << ")\n";
  }
  text << "series            " << (dir / "series.csv").string() << '\n';
  write_text(dir / "report.json", io::dump_json(rep) + "\n");
  write_text(dir / "report.txt", text.str());
  if (!quiet) out << text.str();
  return outcome.termination == dynamics::Termination::non_finite ? kExitNumeric : kExitOk;
}

int cmd_virial_report(std::ostream& out, const std::string& csv_path, const std::string& out_path,
                      std::optional<double> t_max, double tolerance) {
  std::ifstream in(csv_path);
  if (!in) throw ParseError("cannot open '" + csv_path + "'");
  const io::CsvTable table = io::read_csv(in);
  const auto t = table.values("t");
  const auto var = table.values("variance");
  const auto rhs = table.values("virial_rhs");
  for (double v : var) {
    if (std::isnan(v)) throw ParseError("column 'variance' has empty cells");
  }
  const auto d2 = diagnostics::second_differences(t, var);

  std::ostringstream csv;
  for (std::size_t c = 0; c < table.columns.size(); ++c) csv << table.columns[c] << ',';
  csv << "d2_variance_dt2,rel_residual\n";
  double worst = 0.0;
  double worst_t = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (double v : table.rows[i]) csv << (std::isnan(v) ? "" : io::format_double(v)) << ',';
    if (i == 0 || i + 1 == table.rows.size()) {
      csv << ",\n";
      continue;
    }
    const double d = d2[i - 1];
    const double res = std::abs(d - rhs[i]) / std::max(std::abs(rhs[i]), std::numeric_limits<double>::epsilon());
    csv << io::format_double(d) << ',' << io::format_double(res) << '\n';
    if (t_max && t[i] > *t_max) continue;
    ++used;
    if (res > worst) {
      worst = res;
      worst_t = t[i];
    }
  }
  std::ostringstream summary;
  summary << std::setprecision(6) << "max rel_residual = " << worst << " at t = " << worst_t << " over " << used
          << " interior samples: " << (worst <= tolerance ? "PASS" : "FAIL") << " (tolerance " << tolerance
          << ")\n";
  if (out_path.empty()) {
    out << csv.str() << summary.str();
  } else {
    write_text(out_path, csv.str());
    out << summary.str();
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for the inhomogeneous nonlinear Schroedinger equation"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Exact exponent bookkeeping and theorem hypotheses");
  int check_n = 3;
  std::string check_s = "1";
  std::optional<std::string> check_b;
  std::string check_sigma = "auto";
  std::string check_theorem = "T1.7";
  bool check_poly = false;
  std::string check_sym = "none";
  check->add_option("--n", check_n, "Space dimension")->required();
  check->add_option("--s", check_s, "Regularity s (p/q)");
  check->add_option("--b", check_b, "Decay exponent b (p/q)");
  check->add_option("--sigma", check_sigma, "Power sigma (p/q) or auto");
  check->add_option("--theorem", check_theorem, "Theorem whose verdict sets the exit code: T1.3, T1.7, T1.10, T1.13");
  check->add_flag("--polynomial", check_poly, "Nonlinearity is a polynomial of degree 1 + sigma");
  check->add_option("--symmetry", check_sym, "none, finite_variance, radial, cylindrical");

  auto* pairs = app.add_subcommand("pairs", "Admissible pair table");
  int pairs_n = 3;
  std::vector<std::string> pairs_p;
  pairs->add_option("--n", pairs_n, "Space dimension")->required();
  pairs->add_option("--p", pairs_p, "Lebesgue exponents (p/q or inf); repeatable");

  auto* gs = app.add_subcommand("ground-state", "Ground-state quantities and sharp constant");
  int gs_n = 3;
  std::string gs_b;
  double gs_eps = 1.0;
  double gs_tol = 1e-14;
  std::string gs_out;
  bool gs_json = false;
  gs->add_option("--n", gs_n, "Space dimension (>= 3)")->required();
  gs->add_option("--b", gs_b, "Decay exponent b in [0, 2) (p/q)")->required();
  gs->add_option("--eps", gs_eps, "Scale parameter of the profile");
  gs->add_option("--tol", gs_tol, "Relative tolerance of the quadrature");
  gs->add_option("--out", gs_out, "Directory for report.json and report.txt");
  gs->add_flag("--json", gs_json, "Print the JSON report instead of the text table");

  auto* sim = app.add_subcommand("simulate", "Run a simulation from a JSON config");
  std::string sim_config;
  std::string sim_root;
  bool sim_quiet = false;
  sim->add_option("config", sim_config, "Run configuration file")->required();
  sim->add_option("--output-root", sim_root, "Override output.directory");
  sim->add_flag("--quiet", sim_quiet, "Only write files");

  auto* vir = app.add_subcommand("virial-report", "Compare d2/dt2 of the variance with the virial right side");
  std::string vir_csv;
  std::string vir_out;
  std::optional<double> vir_tmax;
  double vir_tol = 1e-3;
  vir->add_option("series", vir_csv, "series.csv written by simulate")->required();
  vir->add_option("--out", vir_out, "Write the augmented CSV here instead of stdout");
  vir->add_option("--t-max", vir_tmax, "End of the window used for the maximum residual");
  vir->add_option("--tolerance", vir_tol, "Pass threshold for the maximum residual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  parallel::configure_threads();
  try {
    if (*check) {
      return cmd_check(out, check_n, check_s, check_b, check_sigma, check_theorem, check_poly, check_sym);
    }
    if (*pairs) return cmd_pairs(out, pairs_n, pairs_p);
    if (*gs) return cmd_ground_state(out, gs_n, gs_b, gs_eps, gs_tol, gs_out, gs_json);
    if (*sim) return cmd_simulate(out, sim_config, sim_root, sim_quiet);
    if (*vir) return cmd_virial_report(out, vir_csv, vir_out, vir_tmax, vir_tol);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return kExitQuadrature;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace inls
