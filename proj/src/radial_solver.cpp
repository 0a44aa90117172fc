#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "rdf/errors.hpp"
#include "rdf/radial.hpp"

namespace rdf {

double sommerfeld_energy(const StateLabel &label, const PhysParams &params) {
  const double za = params.z_alpha();
  const double k2 = double(label.kappa) * label.kappa;
  if (za * za >= k2)
    throw SupercriticalCoupling("(Z alpha)^2 >= kappa^2 for kappa = " +
                                std::to_string(label.kappa));
  const double gamma = std::sqrt(k2 - za * za);
  const double q = za / (label.n - std::abs(label.kappa) + gamma);
  return 1.0 / std::sqrt(1.0 + q * q);
}

namespace {

struct Amplitudes {
  double g;
  double f;
};

// Radial system in x = ln r:
//   dg/dx = -(1 + kappa) g + (r (E + 1) + Z alpha) f
//   df/dx = -(1 - kappa) f - (r (E - 1) + Z alpha) g
struct RadialSystem {
  double energy;
  double kappa;
  double za;

  Amplitudes rhs(double r, Amplitudes y) const {
    return {-(1.0 + kappa) * y.g + (r * (energy + 1.0) + za) * y.f,
            -(1.0 - kappa) * y.f - (r * (energy - 1.0) + za) * y.g};
  }

  // One RK4 step of signed log-length dx from radius r.
  Amplitudes step(double r, double dx, Amplitudes y) const {
    const double r_half = r * std::exp(0.5 * dx);
    const double r_full = r * std::exp(dx);
    const auto k1 = rhs(r, y);
    const auto k2 = rhs(r_half, {y.g + 0.5 * dx * k1.g, y.f + 0.5 * dx * k1.f});
    const auto k3 = rhs(r_half, {y.g + 0.5 * dx * k2.g, y.f + 0.5 * dx * k2.f});
    const auto k4 = rhs(r_full, {y.g + dx * k3.g, y.f + dx * k3.f});
    return {y.g + dx / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g),
            y.f + dx / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f)};
  }
};

// Frobenius expansion g = r^(gamma-1) sum a_k r^k, f = r^(gamma-1) sum b_k r^k.
Amplitudes series_start(const RadialSystem &sys, double gamma, double r) {
  constexpr int terms = 6;
  std::array<double, terms> a{}, b{};
  a[0] = 1.0;
  b[0] = (gamma + sys.kappa) / sys.za;
  for (int k = 1; k < terms; ++k) {
    const double r1 = (sys.energy + 1.0) * b[k - 1];
    const double r2 = -(sys.energy - 1.0) * a[k - 1];
    const double p = k + gamma + sys.kappa, q = k + gamma - sys.kappa;
    const double det = k * (k + 2.0 * gamma);
    a[k] = (q * r1 + sys.za * r2) / det;
    b[k] = (p * r2 - sys.za * r1) / det;
  }
  double g = 0.0, f = 0.0, rk = 1.0;
  for (int k = 0; k < terms; ++k) {
    g += a[k] * rk;
    f += b[k] * rk;
    rk *= r;
  }
  const double lead = std::pow(r, gamma - 1.0);
  return {g * lead, f * lead};
}

struct Branches {
  std::vector<double> g, f;
  Amplitudes out_at_match;
  Amplitudes in_at_match;
};

// Outward solution on [0, m], inward on [m, N-1] (unscaled).
Branches integrate(const RadialGrid &grid, const RadialSystem &sys, double gamma,
                   std::size_t m) {
  const std::size_t n = grid.size();
  const double h = grid.log_step();
  Branches b;
  b.g.resize(n);
  b.f.resize(n);

  Amplitudes y = series_start(sys, gamma, grid[0]);
  b.g[0] = y.g;
  b.f[0] = y.f;
  for (std::size_t i = 0; i < m; ++i) {
    y = sys.step(grid[i], h, y);
    b.g[i + 1] = y.g;
    b.f[i + 1] = y.f;
  }
  b.out_at_match = y;

  const double lambda = std::sqrt(std::max(1.0 - sys.energy * sys.energy, 0.0));
  y = {1.0, -lambda / (1.0 + sys.energy)};
  b.g[n - 1] = y.g;
  b.f[n - 1] = y.f;
  for (std::size_t i = n - 1; i > m; --i) {
    y = sys.step(grid[i], -h, y);
    b.g[i - 1] = y.g;
    b.f[i - 1] = y.f;
    // keep the growing inward branch representable
    const double s = std::max(std::abs(y.g), std::abs(y.f));
    if (s > 1e100) {
      for (std::size_t j = i - 1; j < n; ++j) {
        b.g[j] /= s;
        b.f[j] /= s;
      }
      y.g /= s;
      y.f /= s;
    }
  }
  b.in_at_match = y;
  return b;
}

// Normalised Wronskian of the two branches at the matching point: the sine of
// the angle between them in the (g, f) plane.
double mismatch(const Amplitudes &o, const Amplitudes &i) {
  const double w = o.g * i.f - o.f * i.g;
  return w / (std::hypot(o.g, o.f) * std::hypot(i.g, i.f));
}

std::size_t matching_index(const RadialGrid &grid, double za, double energy) {
  // outer classical turning point, E - V(r) = 1
  const double r_turn = za / (1.0 - energy);
  const auto it = std::lower_bound(grid.r().begin(), grid.r().end(), r_turn);
  auto m = std::size_t(it - grid.r().begin());
  const std::size_t lo = grid.size() / 10, hi = grid.size() - grid.size() / 10;
  return std::clamp(m, lo, hi);
}

} // namespace

RadialSolution solve_radial(const StateLabel &label, const PhysParams &params,
                            GridPtr grid_ptr, double tol) {
  validate(params);
  validate(label);
  if (!(tol > 0.0)) throw PreconditionError("tol must be positive");
  const RadialGrid &grid = *grid_ptr;
  const double za = params.z_alpha();
  const double kappa = label.kappa;
  const double gamma = std::sqrt(kappa * kappa - za * za);

  const double e_seed = sommerfeld_energy(label, params);
  const double binding = 1.0 - e_seed;
  const std::size_t m = matching_index(grid, za, e_seed);

  auto shoot = [&](double energy) {
    const RadialSystem sys{energy, kappa, za};
    const auto b = integrate(grid, sys, gamma, m);
    return mismatch(b.out_at_match, b.in_at_match);
  };

  double lo = e_seed - 0.05 * binding;
  double hi = std::min(e_seed + 0.05 * binding, 0.5 * (e_seed + 1.0));
  const double w_lo = shoot(lo), w_hi = shoot(hi);
  if (!(w_lo * w_hi < 0.0))
    throw NoConvergence("no eigenvalue bracketed for n = " + std::to_string(label.n) +
                        ", kappa = " + std::to_string(label.kappa));

  const double width = std::max(1e-2 * tol * binding, 4e-16 * e_seed);
  auto stop = [width](double a, double b) { return std::abs(b - a) <= width; };
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(shoot, lo, hi, w_lo, w_hi, stop, iters);
  if (iters >= 200)
    throw NoConvergence("energy iteration did not converge for n = " +
                        std::to_string(label.n) + ", kappa = " +
                        std::to_string(label.kappa));

  RadialSolution sol;
  sol.label = label;
  sol.energy = 0.5 * (root.first + root.second);
  sol.grid = grid_ptr;
  sol.match_index = m;

  const RadialSystem sys{sol.energy, kappa, za};
  auto b = integrate(grid, sys, gamma, m);
  // join the inward branch onto the outward one (least squares on (g, f))
  const auto &o = b.out_at_match;
  const auto &in = b.in_at_match;
  const double scale = (o.g * in.g + o.f * in.f) / (in.g * in.g + in.f * in.f);
  for (std::size_t i = m; i < grid.size(); ++i) {
    b.g[i] *= scale;
    b.f[i] *= scale;
  }

  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) density[i] = b.g[i] * b.g[i] + b.f[i] * b.f[i];
  // int_0^r0 of (g^2 + f^2) r^2 ~ r^(2 gamma) below the first node
  const double r0 = grid[0];
  const double head = density[0] * r0 * r0 * r0 / (2.0 * gamma + 1.0);
  double norm = std::sqrt(grid.integrate_r2(density) + head);
  if (b.g[0] < 0.0) norm = -norm;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    b.g[i] /= norm;
    b.f[i] /= norm;
  }
  sol.g = std::move(b.g);
  sol.f = std::move(b.f);

  sol.nodes = count_nodes(sol.g);
  if (sol.nodes != label.expected_nodes())
    throw GridTooCoarse("g has " + std::to_string(sol.nodes) + " nodes, expected " +
                        std::to_string(label.expected_nodes()) + " (n = " +
                        std::to_string(label.n) + ", kappa = " +
                        std::to_string(label.kappa) + ")");

  double g_max = 0.0;
  for (double v : sol.g) g_max = std::max(g_max, std::abs(v));
  sol.tail_ratio = std::max(std::abs(sol.g.back()), std::abs(sol.f.back())) / g_max;
  return sol;
}

RadialSolution solve_radial(const StateLabel &label, const PhysParams &params, double tol) {
  validate(params);
  return solve_radial(label, params, default_grid(params, label.n), tol);
}

std::pair<double, double> RadialSolution::at(double r) const {
  const auto &rs = grid->r();
  if (!(r >= rs.front() && r <= rs.back()))
    throw OutOfGrid("r = " + std::to_string(r) + " outside [" +
                    std::to_string(rs.front()) + ", " + std::to_string(rs.back()) + "]");
  const std::size_t n = rs.size();
  std::size_t k = std::size_t(std::upper_bound(rs.begin(), rs.end(), r) - rs.begin());
  k = std::clamp<std::size_t>(k, 1, n - 1) - 1; // r in [r_k, r_{k+1}]
  if (r == rs[k]) return {g[k], f[k]};
  if (r == rs[k + 1]) return {g[k + 1], f[k + 1]};

  // Fritsch-Carlson monotone cubic Hermite on the uniform x = ln r mesh.
  const double h = grid->log_step();
  const double t = (std::log(r) - std::log(rs[k])) / h;
  auto pchip = [&](const std::vector<double> &y) {
    auto secant = [&](std::size_t i) { return (y[i + 1] - y[i]) / h; };
    auto slope = [&](std::size_t i) {
      if (i == 0) return secant(0);
      if (i == n - 1) return secant(n - 2);
      const double s0 = secant(i - 1), s1 = secant(i);
      if (s0 * s1 <= 0.0) return 0.0;
      return 2.0 / (1.0 / s0 + 1.0 / s1);
    };
    const double d0 = slope(k), d1 = slope(k + 1);
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[k] + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * y[k + 1] + (t3 - t2) * h * d1;
  };
  return {pchip(g), pchip(f)};
}

ResidualResult dirac_residual(const RadialSolution &sol, const PhysParams &params) {
  const RadialGrid &grid = *sol.grid;
  const std::size_t n = grid.size();
  const double h = grid.log_step();
  const double za = params.z_alpha();
  const double kappa = sol.label.kappa;
  const double e = sol.energy;

  std::vector<double> res(n, 0.0), amp(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) amp[i] = sol.g[i] * sol.g[i] + sol.f[i] * sol.f[i];
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double r = grid[i];
    const double dg = (sol.g[i - 2] - 8.0 * sol.g[i - 1] + 8.0 * sol.g[i + 1] - sol.g[i + 2]) / (12.0 * h);
    const double df = (sol.f[i - 2] - 8.0 * sol.f[i - 1] + 8.0 * sol.f[i + 1] - sol.f[i + 2]) / (12.0 * h);
    const double rg = dg + (1.0 + kappa) * sol.g[i] - (r * (e + 1.0) + za) * sol.f[i];
    const double rf = df + (1.0 - kappa) * sol.f[i] + (r * (e - 1.0) + za) * sol.g[i];
    res[i] = rg * rg + rf * rf;
  }
  const double denom = grid.integrate_r2(amp);
  if (denom == 0.0) return {0.0, true};
  return {std::sqrt(grid.integrate_r2(res) / denom), false};
}

double radial_overlap(const RadialSolution &a, const RadialSolution &b) {
  if (!(a.grid == b.grid || *a.grid == *b.grid))
    throw GridMismatch("radial_overlap: solutions live on different grids");
  std::vector<double> p(a.g.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.g[i] * b.g[i] + a.f[i] * b.f[i];
  return a.grid->integrate_r2(p);
}

} // namespace rdf
