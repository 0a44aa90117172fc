#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdf/algebra.hpp"
#include "rdf/errors.hpp"
#include "rdf/perturbation.hpp"
#include "rdf/potentials.hpp"

namespace rdf::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string state_name(const StateLabel &s) {
  return "(n=" + std::to_string(s.n) + ", kappa=" + std::to_string(s.kappa) + ")";
}

std::string cell_text(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto *i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

json cell_json(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto *i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void add_config_meta(Table &t, const RunConfig &c) {
  t.meta.emplace_back("alpha", c.alpha);
  t.meta.emplace_back("Z", static_cast<long long>(c.Z));
  t.meta.emplace_back("z_alpha", c.params().z_alpha());
  t.meta.emplace_back("points", static_cast<long long>(c.points));
}

void add_state_meta(Table &t, const RadialSolution &sol) {
  t.meta.emplace_back("n", static_cast<long long>(sol.label.n));
  t.meta.emplace_back("kappa", static_cast<long long>(sol.label.kappa));
  t.meta.emplace_back("two_mj", static_cast<long long>(sol.label.two_mj));
  t.meta.emplace_back("E", sol.energy);
}

// Valid kappa values for shell n, ordered by j with negative kappa first.
std::vector<int> kappas_for(int n) {
  std::vector<int> ks;
  for (int a = 1; a <= n; ++a) {
    ks.push_back(-a);
    if (a < n) ks.push_back(a);
  }
  return ks;
}

int report_error(const std::exception &e, std::ostream &err) {
  err << "error: " << e.what() << '\n';
  return 2;
}

CheckResult evaluate(const std::string &name, double threshold,
                     const std::function<double()> &measure) {
  CheckResult r{name, kNaN, threshold, false, {}};
  try {
    r.value = measure();
    r.pass = r.value <= threshold;
  } catch (const std::exception &e) {
    r.error = e.what();
  }
  return r;
}

} // namespace

StateLabel RunConfig::label() const {
  return StateLabel{n, kappa, static_cast<int>(std::lround(2.0 * mj))};
}

GridPtr RunConfig::grid_for(int n_state) const {
  const double bohr = 1.0 / params().z_alpha();
  const double hi = r_max ? *r_max : 40.0 * n_state;
  return std::make_shared<const RadialGrid>(r_min * bohr, hi * bohr, points);
}

GridPtr RunConfig::grid() const { return grid_for(n); }

void validate(const RunConfig &config) {
  validate(config.params());
  if (std::abs(2.0 * config.mj - std::round(2.0 * config.mj)) > 1e-12)
    throw InvalidLabel("m_j must be a half-integer");
  validate(config.label());
  if (!(config.tol > 0.0)) throw PreconditionError("tol must be positive");
  if (!(config.r_min > 0.0)) throw PreconditionError("rmin must be positive");
  if (config.r_max && !(*config.r_max > config.r_min))
    throw PreconditionError("rmax must exceed rmin");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table(const Table &table, Format format, std::ostream &out) {
  if (format == Format::Json) {
    json doc;
    json meta = json::object();
    for (const auto &[k, v] : table.meta) meta[k] = cell_json(v);
    doc["meta"] = meta;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto &row : table.rows) {
      json r = json::array();
      for (const Cell &c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto &[k, v] : table.meta) out << "# " << k << " = " << cell_text(v) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_report(const std::vector<CheckResult> &checks, Format format, std::ostream &out) {
  bool all = true;
  for (const auto &c : checks) all &= c.pass;
  if (format == Format::Json) {
    json list = json::array();
    for (const auto &c : checks) {
      json e;
      e["check"] = c.check;
      e["value"] = std::isfinite(c.value) ? json(c.value) : json(nullptr);
      e["threshold"] = c.threshold;
      e["pass"] = c.pass;
      if (!c.error.empty()) e["error"] = c.error;
      list.push_back(std::move(e));
    }
    json doc;
    doc["checks"] = std::move(list);
    doc["pass"] = all;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# pass = " << (all ? "true" : "false") << '\n';
  out << "check,value,threshold,pass\n";
  for (const auto &c : checks)
    out << c.check << ',' << format_number(c.value) << ',' << format_number(c.threshold) << ','
        << (c.pass ? "true" : "false") << '\n';
}

std::optional<Sample> parse_sample(const std::string &text) {
  Sample s{};
  double *fields[] = {&s.r, &s.theta, &s.phi, &s.x0};
  std::istringstream in(text);
  std::string item;
  int k = 0;
  while (std::getline(in, item, ',')) {
    if (k == 4) return std::nullopt;
    try {
      std::size_t used = 0;
      *fields[k] = std::stod(item, &used);
      if (used != item.size()) return std::nullopt;
    } catch (const std::exception &) {
      return std::nullopt;
    }
    ++k;
  }
  if (k != 4) return std::nullopt;
  return s;
}

Table levels_table(const RunConfig &config, int n_max) {
  if (n_max < 1 || n_max > 5) throw PreconditionError("n_max must lie in [1, 5]");
  const PhysParams params = config.params();
  std::vector<StateLabel> states;
  for (int n = 1; n <= n_max; ++n)
    for (int k : kappas_for(n)) states.push_back(StateLabel{n, k, 1});

  std::vector<double> energy(states.size(), kNaN);
  std::vector<std::exception_ptr> failure(states.size());
  const auto count = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      energy[i] = solve_radial(states[i], params, config.grid_for(states[i].n), config.tol).energy;
    } catch (...) {
      failure[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!failure[i]) continue;
    try {
      std::rethrow_exception(failure[i]);
    } catch (const std::exception &e) {
      throw NoConvergence("state " + state_name(states[i]) + ": " + e.what());
    }
  }

  Table t;
  add_config_meta(t, config);
  t.meta.emplace_back("tol", config.tol);
  t.columns = {"n", "kappa", "E_shooting", "E_formula", "rel_error"};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double ef = sommerfeld_energy(states[i], params);
    t.rows.push_back({static_cast<long long>(states[i].n), static_cast<long long>(states[i].kappa),
                      energy[i], ef, std::abs(energy[i] - ef) / ef});
  }
  return t;
}

Table radial_table(const RunConfig &config) {
  const RadialSolution sol = solve_radial(config.label(), config.params(), config.grid(), config.tol);
  std::vector<double> density(sol.g.size());
  for (std::size_t i = 0; i < density.size(); ++i) density[i] = sol.g[i] * sol.g[i] + sol.f[i] * sol.f[i];

  Table t;
  add_config_meta(t, config);
  add_state_meta(t, sol);
  t.meta.emplace_back("nodes", static_cast<long long>(sol.nodes));
  t.meta.emplace_back("norm", sol.grid->integrate_r2(density));
  t.meta.emplace_back("tail_ratio", sol.tail_ratio);
  t.columns = {"r", "g", "f"};
  for (std::size_t i = 0; i < sol.g.size(); ++i) t.rows.push_back({(*sol.grid)[i], sol.g[i], sol.f[i]});
  return t;
}

Table phi_table(const RunConfig &config, const std::vector<Sample> &samples) {
  const RadialSolution sol = solve_radial(config.label(), config.params(), config.grid(), config.tol);
  const SMap map = build_s_map();
  Table t;
  add_config_meta(t, config);
  add_state_meta(t, sol);
  t.columns = {"r", "theta", "phi", "x0", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "status"};
  for (const Sample &s : samples) {
    std::vector<Cell> row{s.r, s.theta, s.phi, s.x0};
    try {
      const RealSpinor8 v = build_phi_state(sol, map, {s.r, s.theta, s.phi, s.x0});
      for (int k = 0; k < 8; ++k) row.emplace_back(v(k));
      row.emplace_back(std::string("ok"));
    } catch (const OutOfGrid &) {
      for (int k = 0; k < 8; ++k) row.emplace_back(kNaN);
      row.emplace_back(std::string("out_of_grid"));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table selfpot_table(const RunConfig &config) {
  const PhysParams params = config.params();
  const RadialSolution sol = solve_radial(config.label(), params, config.grid(), config.tol);
  const RadialDensity rho = charge_density(sol, params);
  const FourPotential a = radial_poisson(rho);
  Table t;
  add_config_meta(t, config);
  add_state_meta(t, sol);
  t.meta.emplace_back("total_charge", rho.total_charge);
  t.meta.emplace_back("laplacian_residual", laplacian_residual(a, rho));
  t.meta.emplace_back("gauss_law_deviation", gauss_law_deviation(a, rho));
  t.columns = {"r", "rho", "A0"};
  for (std::size_t i = 0; i < rho.rho.size(); ++i)
    t.rows.push_back({(*rho.grid)[i], rho.rho[i], a.a0[i].real()});
  return t;
}

std::vector<CheckResult> run_checks(const RunConfig &config) {
  const PhysParams params = config.params();
  const EtaSet set = build_eta_set();
  const SMap map = build_s_map();
  std::vector<CheckResult> out;

  out.push_back(evaluate("clifford_residual", 1e-14, [&] { return clifford_residual(set); }));
  out.push_back(evaluate("s_map_round_trip", 1e-13, [&] {
    std::mt19937_64 rng(20240917);
    std::normal_distribution<double> nd;
    double worst = s_round_trip_residual(map);
    for (int k = 0; k < 100; ++k) {
      ComplexSpinor4 phi;
      for (int i = 0; i < 4; ++i) phi(i) = cplx(nd(rng), nd(rng));
      worst = std::max(worst, (s_decode(s_encode(phi, map), map) - phi).cwiseAbs().maxCoeff());
    }
    return worst;
  }));
  out.push_back(evaluate("spectrum_rel_error", config.tol, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n)
      for (int k : kappas_for(n)) {
        if (std::abs(k) > 2) continue;
        const StateLabel s{n, k, 1};
        const double e = solve_radial(s, params, config.grid_for(n), config.tol).energy;
        const double ef = sommerfeld_energy(s, params);
        worst = std::max(worst, std::abs(e - ef) / ef);
      }
    return worst;
  }));

  // state-dependent checks share one solve
  std::optional<RadialSolution> sol;
  std::string solve_error;
  try {
    sol = solve_radial(config.label(), params, config.grid(), config.tol);
  } catch (const std::exception &e) {
    solve_error = e.what();
  }
  auto with_state = [&](const std::string &name, double threshold,
                        const std::function<double(const RadialSolution &)> &measure) {
    if (!sol) {
      out.push_back(CheckResult{name, kNaN, threshold, false, solve_error});
      return;
    }
    out.push_back(evaluate(name, threshold, [&] { return measure(*sol); }));
  };

  with_state("poisson_residual", 1e-4, [&](const RadialSolution &s) {
    const RadialDensity rho = charge_density(s, params);
    return laplacian_residual(radial_poisson(rho), rho);
  });
  with_state("gauss_law", 1e-8, [&](const RadialSolution &s) {
    const RadialDensity rho = charge_density(s, params);
    return gauss_law_deviation(radial_poisson(rho), rho);
  });
  with_state("ret_adv_static", 1e-12, [&](const RadialSolution &s) {
    return ret_adv_difference(charge_density(s, params), 0.0);
  });
  with_state("anticommutator_scalarity", 1e-14, [&](const RadialSolution &s) {
    const FourPotential ext = coulomb_external(params, s.grid);
    const FourPotential self_pot = radial_poisson(charge_density(s, params));
    return symmetric_product(coupling_from_potential(ext, set, params),
                             coupling_from_potential(self_pot, set, params))
        .off_scalar_residue;
  });
  out.push_back(evaluate("quadratic_remainder", 1e-13, [&] {
    double worst = 0.0;
    for (double a : {0.05, 0.1, 0.2})
      worst = std::max(worst, quadratic_remainder_deviation(coupling_from_scalars({a, -a}, set)));
    return worst;
  }));
  out.push_back(evaluate("quadratic_spot", 1e-15, [&] {
    return std::abs(quadratic_identity_residual(coupling_from_scalars({0.1}, set)) - 0.0009);
  }));

  std::optional<PerturbationReport> report;
  std::string report_error_text = solve_error;
  if (sol) {
    try {
      report = first_order_source(*sol, params, set, map);
    } catch (const std::exception &e) {
      report_error_text = e.what();
    }
  }
  const PerturbationThresholds th;
  auto from_report = [&](const std::string &name, double threshold, double PerturbationReport::*field) {
    if (!report) {
      out.push_back(CheckResult{name, kNaN, threshold, false, report_error_text});
      return;
    }
    const double v = (*report).*field;
    out.push_back(CheckResult{name, v, threshold, v <= threshold, {}});
  };
  from_report("a_rad_norm", th.a_rad, &PerturbationReport::a_rad_norm);
  from_report("source_ret_adv", th.ret_adv, &PerturbationReport::ret_adv_norm);
  from_report("source_norm", th.source, &PerturbationReport::source_norm);
  return out;
}

namespace {

template <class F> int emit(F &&build, const RunConfig &config, std::ostream &out, std::ostream &err) {
  try {
    validate(config);
    const Table t = build();
    write_table(t, config.format, out);
    return 0;
  } catch (const std::exception &e) {
    return report_error(e, err);
  }
}

} // namespace

int cmd_levels(const RunConfig &config, int n_max, std::ostream &out, std::ostream &err) {
  Table t;
  try {
    validate(config);
    t = levels_table(config, n_max);
  } catch (const std::exception &e) {
    return report_error(e, err);
  }
  write_table(t, config.format, out);
  bool ok = true;
  for (const auto &row : t.rows) ok &= std::get<double>(row.back()) <= config.tol;
  return ok ? 0 : 1;
}

int cmd_radial(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return emit([&] { return radial_table(config); }, config, out, err);
}

int cmd_phi(const RunConfig &config, const std::vector<Sample> &samples, std::ostream &out,
            std::ostream &err) {
  return emit([&] { return phi_table(config, samples); }, config, out, err);
}

int cmd_selfpot(const RunConfig &config, std::ostream &out, std::ostream &err) {
  return emit([&] { return selfpot_table(config); }, config, out, err);
}

int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err) {
  try {
    validate(config);
  } catch (const std::exception &e) {
    return report_error(e, err);
  }
  const std::vector<CheckResult> checks = run_checks(config);
  write_report(checks, config.format, out);
  for (const auto &c : checks) {
    if (c.pass) continue;
    err << "verification failed: " << c.check;
    if (!c.error.empty()) err << " (" << c.error << ")";
    err << '\n';
    return 1;
  }
  return 0;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  RunConfig config;
  CLI::App app{"Real Dirac field tools: bound states, field states, self-potentials and checks",
               "rdf"};
  app.fallthrough();
  app.require_subcommand(1);

  double r_max = 0.0;
  std::string format = "csv";
  app.add_option("--alpha", config.alpha, "fine-structure constant")->capture_default_str();
  app.add_option("--Z", config.Z, "nuclear charge")->capture_default_str();
  app.add_option("--n", config.n, "principal quantum number")->capture_default_str();
  app.add_option("--kappa", config.kappa, "Dirac quantum number")->capture_default_str();
  app.add_option("--mj", config.mj, "magnetic quantum number m_j")->capture_default_str();
  app.add_option("--rmin", config.r_min, "grid start in Bohr units 1/(Z alpha)")
      ->capture_default_str();
  auto *rmax_opt = app.add_option("--rmax", r_max, "grid end in Bohr units (default 40 n)");
  app.add_option("--points", config.points, "radial grid points")->capture_default_str();
  app.add_option("--tol", config.tol, "energy tolerance")->capture_default_str();
  app.add_option("--out", config.out, "output file (default stdout)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  int n_max = 3;
  std::vector<std::string> sample_text;
  auto *levels = app.add_subcommand("levels", "energy levels against the closed form");
  levels->add_option("--n-max", n_max, "largest n (<= 5)")->capture_default_str();
  auto *radial = app.add_subcommand("radial", "radial functions g, f");
  auto *phi = app.add_subcommand("phi", "real eight-component field at sample points");
  phi->add_option("--sample", sample_text, "r,theta,phi,x0 (repeatable)")->required();
  auto *selfpot = app.add_subcommand("selfpot", "charge density and static self-potential");
  auto *verify = app.add_subcommand("verify", "run the invariant suite");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (rmax_opt->count() > 0) config.r_max = r_max;
  config.format = format == "json" ? Format::Json : Format::Csv;

  std::vector<Sample> samples;
  for (const auto &s : sample_text) {
    const auto parsed = parse_sample(s);
    if (!parsed) {
      err << "error: bad --sample '" << s << "', expected r,theta,phi,x0\n";
      return 2;
    }
    samples.push_back(*parsed);
  }

  std::ostringstream buffer;
  std::ostream &sink = config.out.empty() ? out : buffer;
  int code = 2;
  if (*levels) code = cmd_levels(config, n_max, sink, err);
  else if (*radial) code = cmd_radial(config, sink, err);
  else if (*phi) code = cmd_phi(config, samples, sink, err);
  else if (*selfpot) code = cmd_selfpot(config, sink, err);
  else if (*verify) code = cmd_verify(config, sink, err);

  if (!config.out.empty()) {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << config.out << '\n';
      return 2;
    }
    file << buffer.str();
    if (!file) {
      err << "error: write to " << config.out << " failed\n";
      return 2;
    }
  }
  return code;
}

} // namespace rdf::cli
