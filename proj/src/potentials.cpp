#include "rdf/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rdf/errors.hpp"
#include "rdf/kernels.hpp"

namespace rdf {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// rho_j 4 pi r_j^3 h with trapezoid end weights.
std::vector<double> weighted_source(const RadialDensity &rho) {
  const RadialGrid &grid = *rho.grid;
  const std::size_t n = grid.size();
  std::vector<double> ws(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid[j];
    ws[j] = rho.rho[j] * kFourPi * r * r * r * grid.log_step();
  }
  ws.front() *= 0.5;
  ws.back() *= 0.5;
  return ws;
}

} // namespace

const char *to_string(PotentialKind kind) {
  switch (kind) {
  case PotentialKind::Static: return "static";
  case PotentialKind::Retarded: return "retarded";
  case PotentialKind::Advanced: return "advanced";
  }
  return "?";
}

void require_same_grid(const GridPtr &a, const GridPtr &b, const char *where) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw GridMismatch(std::string(where) + ": operands live on different grids");
}

RadialDensity make_density(GridPtr grid, std::vector<double> rho, double modulation) {
  if (rho.size() != grid->size())
    throw GridMismatch("make_density: density length does not match the grid");
  RadialDensity d;
  d.total_charge = kFourPi * grid->integrate_r2(rho);
  d.grid = std::move(grid);
  d.rho = std::move(rho);
  d.modulation = modulation;
  return d;
}

std::vector<double> FourPotential::real_a0() const {
  std::vector<double> v(a0.size());
  for (std::size_t i = 0; i < a0.size(); ++i) v[i] = a0[i].real();
  return v;
}

FourPotential coulomb_external(const PhysParams &params, GridPtr grid) {
  FourPotential p;
  p.a0.resize(grid->size());
  const double q = params.Z * params.proton_charge();
  for (std::size_t i = 0; i < grid->size(); ++i) p.a0[i] = q / (*grid)[i];
  p.grid = std::move(grid);
  return p;
}

RadialDensity charge_density(const RadialSolution &sol, const PhysParams &params) {
  const RadialGrid &grid = *sol.grid;
  const double e = params.electron_charge();
  std::vector<double> rho(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    rho[i] = e * (sol.g[i] * sol.g[i] + sol.f[i] * sol.f[i]) / kFourPi;
  const double q = kFourPi * grid.integrate_r2(rho);
  for (double &v : rho) v *= e / q;
  return make_density(sol.grid, std::move(rho));
}

FourPotential helmholtz_potential(const RadialDensity &rho, double omega, PotentialKind kind) {
  if (!(omega >= 0.0)) throw PreconditionError("helmholtz_potential: omega must be >= 0");
  if (omega > 0.0 && kind == PotentialKind::Static)
    throw PreconditionError("helmholtz_potential: a static potential has omega = 0");
  const RadialGrid &grid = *rho.grid;
  const std::size_t n = grid.size();
  const double sign = kind == PotentialKind::Advanced ? -1.0 : 1.0;

  std::vector<double> inner(n);
  std::vector<cplx> outer(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid[i];
    if (omega == 0.0) {
      inner[i] = 1.0;
      outer[i] = 1.0 / r;
    } else {
      const double x = omega * r;
      inner[i] = std::sin(x) / x;
      outer[i] = cplx(std::cos(x), sign * std::sin(x)) / r;
    }
  }

  FourPotential p;
  p.grid = rho.grid;
  p.omega = omega;
  p.kind = kind;
  p.a0.resize(n);
  kernels::green_sum_parallel(weighted_source(rho), inner, outer, p.a0);
  return p;
}

FourPotential radial_poisson(const RadialDensity &rho) {
  return helmholtz_potential(rho, 0.0, PotentialKind::Static);
}

double ret_adv_difference(const RadialDensity &rho, double omega) {
  const auto ret = helmholtz_potential(rho, omega, PotentialKind::Retarded);
  const auto adv = helmholtz_potential(rho, omega, PotentialKind::Advanced);
  std::vector<cplx> diff(ret.a0.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ret.a0[i] - adv.a0[i];
  return l2_norm(*rho.grid, diff);
}

double laplacian_residual(const FourPotential &pot, const RadialDensity &rho) {
  if (pot.kind != PotentialKind::Static)
    throw PreconditionError("laplacian_residual: needs a static potential");
  require_same_grid(pot.grid, rho.grid, "laplacian_residual");
  const RadialGrid &grid = *pot.grid;
  const std::size_t n = grid.size();
  const double h = grid.log_step();

  // flux form lap A = (r_{i+1/2} dA_+ - r_{i-1/2} dA_-) / (h^2 r^3), with
  // geometric midpoints on the log grid
  std::vector<double> res(n, 0.0), src(n, 0.0), scale(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = grid[i];
    const double a_m = pot.a0[i - 1].real(), a_0 = pot.a0[i].real(), a_p = pot.a0[i + 1].real();
    const double r_p = std::sqrt(r * grid[i + 1]);
    const double r_m = std::sqrt(r * grid[i - 1]);
    const double lap = (r_p * (a_p - a_0) - r_m * (a_0 - a_m)) / (h * h * r * r * r);
    const double s = kFourPi * rho.rho[i];
    res[i] = (lap + s) * (lap + s);
    src[i] = s * s;
    const double a = a_0 / (r * r);
    scale[i] = a * a;
  }
  const double num = grid.integrate_r2(res);
  double den = grid.integrate_r2(src);
  if (den == 0.0) den = grid.integrate_r2(scale);
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

double gauss_law_deviation(const FourPotential &pot, const RadialDensity &rho,
                           double tail_fraction) {
  require_same_grid(pot.grid, rho.grid, "gauss_law_deviation");
  const RadialGrid &grid = *pot.grid;
  const std::size_t n = grid.size();
  const auto first = n - std::max<std::size_t>(1, std::size_t(tail_fraction * double(n)));
  const double q = rho.total_charge;
  double worst = 0.0;
  for (std::size_t i = first; i < n; ++i)
    worst = std::max(worst, std::abs(grid[i] * pot.a0[i].real() - q));
  return q == 0.0 ? worst : worst / std::abs(q);
}

FourPotential operator+(const FourPotential &a, const FourPotential &b) {
  require_same_grid(a.grid, b.grid, "FourPotential::operator+");
  if (a.kind != b.kind || a.omega != b.omega)
    throw PreconditionError("FourPotential::operator+: kinds or frequencies differ");
  FourPotential s = a;
  for (std::size_t i = 0; i < s.a0.size(); ++i) s.a0[i] += b.a0[i];
  return s;
}

double l2_norm(const RadialGrid &grid, const std::vector<cplx> &v) {
  std::vector<double> m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = std::norm(v[i]);
  return std::sqrt(grid.integrate_r2(m));
}

double l2_norm(const RadialGrid &grid, const std::vector<double> &v) {
  std::vector<double> m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = v[i] * v[i];
  return std::sqrt(grid.integrate_r2(m));
}

} // namespace rdf
