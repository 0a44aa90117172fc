// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rdf/algebra.hpp"
#include "rdf/perturbation.hpp"
#include "rdf/potentials.hpp"
#include "rdf/radial.hpp"

using namespace rdf;

namespace {

constexpr double kAlpha = 0.0072973525693;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool run_criterion(int id, const char *name, double budget_s, const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < budget_s;
  const bool pass = o.pass && in_time;
  std::printf("%s [%d] %s: %s; %.3f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), dt, budget_s);
  std::fflush(stdout);
  return pass;
}

PhysParams za(double z) { return PhysParams{z, 1}; }

Outcome spectrum() {
  double worst = 0.0;
  int states = 0;
  for (double z : {kAlpha, 0.2, 0.5})
    for (int n = 1; n <= 3; ++n)
      for (int k = -2; k <= 2; ++k) {
        const StateLabel s{n, k, 1};
        if (k == 0 || std::abs(k) > n || k == n) continue;
        const double e = solve_radial(s, za(z)).energy;
        const double ef = sommerfeld_energy(s, za(z));
        worst = std::max(worst, std::abs(e - ef) / ef);
        ++states;
      }
  return {states == 24 && worst <= 1e-8,
          std::to_string(states) + " states, max rel error " + fmt("%.3e", worst) + " (<= 1e-8)"};
}

Outcome two_s_fixture() {
  const SMap map = build_s_map();
  double worst = 0.0, constant = 0.0;
  for (double z : {kAlpha, 0.2}) {
    const RadialSolution sol = solve_radial({2, -1, 1}, za(z));
    const double bohr = 1.0 / z;
    std::vector<RealSpinor8> got, ref;
    for (double r : {0.3, 1.0, 2.0, 5.0, 9.0})
      for (double th : {0.2, 1.0, 2.4})
        for (double ph : {0.0, 0.9, 4.0})
          for (double x0 : {0.0, 0.8, 3.3, 40.0}) {
            const auto [g, f] = sol.at(r * bohr);
            const double t = sol.energy * x0;
            RealSpinor8 e;
            e << -g * std::cos(t), -g * std::sin(t), 0.0, 0.0, f * std::cos(th) * std::cos(t),
                f * std::cos(th) * std::sin(t), -f * std::sin(th) * std::cos(t - ph),
                f * std::sin(th) * std::sin(t - ph);
            ref.push_back(e);
            got.push_back(build_phi_state(sol, map, {r * bohr, th, ph, x0}));
          }
    double num = 0.0, den = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      num += got[i].dot(ref[i]);
      den += ref[i].squaredNorm();
      scale = std::max(scale, got[i].cwiseAbs().maxCoeff());
    }
    const double c = num / den;
    for (std::size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, (got[i] - c * ref[i]).cwiseAbs().maxCoeff() / scale);
      worst = std::max(worst, std::abs(got[i](2)) + std::abs(got[i](3)));
    }
    constant = c;
  }
  const double expect = 1.0 / std::sqrt(8.0 * std::numbers::pi);
  return {worst <= 1e-10, "structural deviation " + fmt("%.3e", worst) + " (<= 1e-10), constant " +
                              fmt("%.15f", constant) + " vs 1/sqrt(8 pi) = " + fmt("%.15f", expect)};
}

Outcome stationarity() {
  const EtaSet set = build_eta_set();
  const SMap map = build_s_map();
  double worst = 0.0, control = 1e300;
  bool all_zero = true, control_flagged = true;
  for (double z : {kAlpha, 0.2}) {
    for (const StateLabel &s : {StateLabel{1, -1, 1}, StateLabel{2, -1, 1}, StateLabel{2, 1, 1}}) {
      const RadialSolution sol = solve_radial(s, za(z));
      const PerturbationReport r = first_order_source(sol, za(z), set, map);
      worst = std::max(worst, r.source_norm);
      all_zero &= r.phi1_zero;
    }
    const RadialSolution sol = solve_radial({1, -1, 1}, za(z));
    const PerturbationReport c = first_order_source(sol, za(z), set, map, SourceOptions{0.05, false});
    control = std::min(control, c.ret_adv_norm);
    control_flagged &= !c.phi1_zero;
  }
  return {worst <= 1e-10 && all_zero && control > 1e-3 && control_flagged,
          "6 states, max source_norm " + fmt("%.3e", worst) + " (<= 1e-10), phi1_zero " +
              (all_zero ? "true" : "false") + "; control ret_adv_norm " + fmt("%.3e", control) +
              " (> 1e-3)"};
}

Outcome quadratic() {
  const EtaSet set = build_eta_set();
  double worst = 0.0;
  for (double a : {0.05, 0.1, 0.2})
    worst = std::max(worst, quadratic_remainder_deviation(coupling_from_scalars({a}, set)));
  const double spot = quadratic_identity_residual(coupling_from_scalars({0.1}, set));
  return {worst <= 1e-13 && std::abs(spot - 0.0009) <= 1e-13,
          "remainder deviation " + fmt("%.3e", worst) + " (<= 1e-13), spot " + fmt("%.17g", spot) +
              " vs 0.0009"};
}

Outcome particular_solution() {
  double worst_res = 0.0, worst_gauss = 0.0, lo_ratio = 1e300, hi_ratio = 0.0;
  for (double z : {kAlpha, 0.2}) {
    auto residual = [&](std::size_t points, double *gauss) {
      const RadialSolution sol = solve_radial({1, -1, 1}, za(z), default_grid(za(z), 1, points));
      const RadialDensity rho = charge_density(sol, za(z));
      const FourPotential a = radial_poisson(rho);
      if (gauss) *gauss = gauss_law_deviation(a, rho);
      return laplacian_residual(a, rho);
    };
    double gauss = 0.0;
    const double coarse = residual(kDefaultGridPoints, &gauss);
    const double fine = residual(2 * kDefaultGridPoints, nullptr);
    worst_res = std::max(worst_res, coarse);
    worst_gauss = std::max(worst_gauss, gauss);
    lo_ratio = std::min(lo_ratio, coarse / fine);
    hi_ratio = std::max(hi_ratio, coarse / fine);
  }
  return {worst_res <= 1e-4 && lo_ratio >= 3.0 && hi_ratio <= 5.0 && worst_gauss <= 1e-8,
          "laplacian residual " + fmt("%.3e", worst_res) + " (<= 1e-4), refinement ratio " +
              fmt("%.3f", lo_ratio) + ".." + fmt("%.3f", hi_ratio) + " (~4), Gauss law " +
              fmt("%.3e", worst_gauss) + " (<= 1e-8)"};
}

Outcome substrate() {
  const EtaSet set = build_eta_set();
  const SMap map = build_s_map();
  const double cliff = clifford_residual(set);

  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> nd;
  double trip = 0.0;
  for (int k = 0; k < 100; ++k) {
    ComplexSpinor4 phi;
    for (int i = 0; i < 4; ++i) phi(i) = cplx(nd(rng), nd(rng));
    trip = std::max(trip, (s_decode(s_encode(phi, map), map) - phi).cwiseAbs().maxCoeff());
  }

  const PhysParams p = za(0.2);
  const RadialSolution sol = solve_radial({1, -1, 1}, p);
  const CouplingOperator a = coupling_from_potential(coulomb_external(p, sol.grid), set, p);
  const CouplingOperator b = coupling_from_potential(radial_poisson(charge_density(sol, p)), set, p);
  double scalarity = symmetric_product(a, b).off_scalar_residue;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> sa(200), sb(200);
  for (std::size_t i = 0; i < 200; ++i) sa[i] = u(rng), sb[i] = u(rng);
  scalarity = std::max(scalarity, symmetric_product(coupling_from_scalars(sa, set),
                                                    coupling_from_scalars(sb, set))
                                      .off_scalar_residue);
  return {cliff <= 1e-14 && trip <= 1e-13 && scalarity <= 1e-14,
          "Clifford " + fmt("%.3e", cliff) + " (<= 1e-14), round trip " + fmt("%.3e", trip) +
              " (<= 1e-13), anticommutator " + fmt("%.3e", scalarity) + " (<= 1e-14)"};
}

Outcome exit_codes() {
  auto code = [](std::vector<const char *> args) {
    args.insert(args.begin(), "rdf");
    std::ostringstream out, err;
    return cli::run(int(args.size()), args.data(), out, err);
  };
  const int a = code({"verify"});
  const int b = code({"verify", "--points", "50"});
  const int c = code({"verify", "--alpha", "1.5", "--Z", "1"});
  return {a == 0 && b == 1 && c == 2, "default " + std::to_string(a) + " (0), 50 points " +
                                          std::to_string(b) + " (1), alpha 1.5 " +
                                          std::to_string(c) + " (2)"};
}

} // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "spectrum vs closed form", 10.0, spectrum);
  ok &= run_criterion(2, "2s1/2 component pattern", 1.0, two_s_fixture);
  ok &= run_criterion(3, "stationary first-order source", 30.0, stationarity);
  ok &= run_criterion(4, "quadratic identity", 1.0, quadratic);
  ok &= run_criterion(5, "particular solution", 5.0, particular_solution);
  ok &= run_criterion(6, "algebraic substrate", 1.0, substrate);
  ok &= run_criterion(7, "verify exit codes", 60.0, exit_codes);
  std::printf("%s\n", ok ? "ALL PASS" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
