#include "rdf/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "rdf/errors.hpp"

namespace rdf {

namespace {

constexpr double kKappa = 1.0; // inverse Compton length in natural units

bool sampled(const CouplingOperator &a, std::size_t i, double r_min) {
  return !a.grid || (*a.grid)[i] >= r_min;
}

// Gauss-Legendre nodes in cos(theta) on [-1, 1] with weights summing to 1.
struct AngularRule {
  std::vector<double> theta, weight;
};

AngularRule angular_rule() {
  using rule = boost::math::quadrature::gauss<double, 8>;
  AngularRule q;
  const auto &x = rule::abscissa();
  const auto &w = rule::weights();
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (double s : {-1.0, 1.0}) {
      q.theta.push_back(std::acos(s * x[k]));
      q.weight.push_back(0.5 * w[k]);
    }
  }
  return q;
}

} // namespace

CouplingOperator coupling_from_potential(const FourPotential &pot, const EtaSet &set,
                                         const PhysParams &params) {
  if (pot.kind != PotentialKind::Static)
    throw PreconditionError("coupling_from_potential: needs a static potential");
  CouplingOperator a;
  a.grid = pot.grid;
  a.eta0 = set.eta[0];
  a.scalar.resize(pot.a0.size());
  const double e = params.electron_charge();
  for (std::size_t i = 0; i < a.scalar.size(); ++i) a.scalar[i] = e * pot.a0[i].real();
  return a;
}

CouplingOperator coupling_from_scalars(std::vector<double> scalars, const EtaSet &set) {
  CouplingOperator a;
  a.eta0 = set.eta[0];
  a.scalar = std::move(scalars);
  return a;
}

double quadratic_identity_residual(const CouplingOperator &a, double r_min) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sampled(a, i, r_min)) continue;
    const double s = a.scalar[i];
    if (std::abs(s) >= 1.0)
      throw ExpansionDomain("|a| = " + std::to_string(std::abs(s)) +
                            " >= 1 inside the sampled range");
    const double lhs = (1.0 - s + s * s) * (1.0 - s * s);
    worst = std::max(worst, std::abs(lhs - (1.0 - s)));
  }
  return worst;
}

double quadratic_remainder_deviation(const CouplingOperator &a, double r_min) {
  const RealMatrix8 id = RealMatrix8::Identity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sampled(a, i, r_min)) continue;
    const RealMatrix8 m = a.value(i);
    const RealMatrix8 m2 = m * m;
    const RealMatrix8 lhs = (id - m + m2) * (id - m2) - (id - m);
    const RealMatrix8 rhs = m2 * m - m2 * m2;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

SymmetricProduct symmetric_product(const CouplingOperator &a, const CouplingOperator &b) {
  if (a.size() != b.size() || (a.grid && b.grid && !(*a.grid == *b.grid)) ||
      (!a.grid) != (!b.grid))
    throw GridMismatch("symmetric_product: operators sampled on different grids");
  SymmetricProduct out;
  out.scalar.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const RealMatrix8 va = a.value(i), vb = b.value(i);
    const RealMatrix8 ac = va * vb + vb * va;
    const double s = 2.0 * a.scalar[i] * b.scalar[i];
    out.scalar[i] = s;
    out.off_scalar_residue =
        std::max(out.off_scalar_residue, (ac - s * RealMatrix8::Identity()).cwiseAbs().maxCoeff());
  }
  return out;
}

CouplingOperator radiation_coupling(const FourPotential &total, const FourPotential &self_pot,
                                    const FourPotential &ext, const EtaSet &set,
                                    const PhysParams &params) {
  require_same_grid(total.grid, self_pot.grid, "radiation_coupling");
  require_same_grid(total.grid, ext.grid, "radiation_coupling");
  CouplingOperator a;
  a.grid = total.grid;
  a.eta0 = set.eta[0];
  a.scalar.resize(total.a0.size());
  const double e = params.electron_charge();
  for (std::size_t i = 0; i < a.scalar.size(); ++i) {
    // the particular solution is formed as self + ext, so subtract that sum
    const cplx particular = self_pot.a0[i] + ext.a0[i];
    a.scalar[i] = e * (total.a0[i] - particular).real();
  }
  return a;
}

RealSpinor8 psi_from_phi(const RealSpinor8 &phi, double s, const EtaSet &set) {
  const double det = 1.0 - s * s;
  if (std::abs(det) < 1e-8)
    throw ExpansionDomain("1 + a is singular at |a| = " + std::to_string(std::abs(s)));
  const RealMatrix8 id = RealMatrix8::Identity();
  const RealMatrix8 one_plus_a = id + s * set.eta[0];
  // (1 + s eta0)^{-1} = (1 - s eta0) / (1 - s^2) since eta0^2 = 1
  const RealMatrix8 n = (id - s * set.eta[0]) / (kKappa * det);
  return kKappa * one_plus_a * (n * phi);
}

double real_domain_density(const RealSpinor8 &phi, const RealSpinor8 &psi, const EtaSet &set) {
  const RealMatrix8 &e0 = set.eta[0];
  const double phi_term = (e0 * phi).dot(e0 * phi);
  const double psi_term = (e0 * psi).dot(e0 * psi);
  return kKappa * kKappa * phi_term + psi_term;
}

PerturbationReport first_order_source(const RadialSolution &sol, const PhysParams &params,
                                      const EtaSet &set, const SMap &map,
                                      const SourceOptions &options) {
  if (options.require_stationary && options.modulation != 0.0)
    throw NotStationary("first_order_source: source density carries omega = " +
                        std::to_string(options.modulation));
  const GridPtr grid = sol.grid;
  const std::size_t n = grid->size();
  const double e = params.electron_charge();

  // zeroth-order potentials and the particular solution A_p = A_self + A_ext
  const FourPotential ext = coulomb_external(params, grid);
  const RadialDensity rho = charge_density(sol, params);
  const FourPotential self_pot = radial_poisson(rho);
  const FourPotential total = self_pot + ext;
  const CouplingOperator a_rad = radiation_coupling(total, self_pot, ext, set, params);
  const CouplingOperator a_ext = coupling_from_potential(ext, set, params);

  PerturbationReport report;
  report.a_rad_norm = l2_norm(*grid, a_rad.scalar);

  // Phi and Psi on grid nodes x angular nodes (phi_az = 0, x0 = 0)
  const AngularRule ang = angular_rule();
  const std::size_t na = ang.theta.size();
  std::vector<RealSpinor8> phi(n * na);
  std::vector<double> psibar_psi(n, 0.0);
  const auto count = static_cast<std::ptrdiff_t>(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double avg = 0.0;
    try {
      for (std::size_t k = 0; k < na; ++k) {
        const RealSpinor8 p =
            s_encode(stationary_spinor_at_node(sol, i, ang.theta[k], 0.0, 0.0), map);
        phi[i * na + k] = p;
        // Psi = Phi on the stationary family
        avg += ang.weight[k] * p.dot(set.eta[0] * p);
      }
    } catch (...) {
#pragma omp critical(rdf_first_order_source)
      if (!failure) failure = std::current_exception();
    }
    psibar_psi[i] = avg;
  }
  if (failure) std::rethrow_exception(failure);

  // source weighted by the external potential, (A_ext Psibar Psi)
  std::vector<double> weighted(n);
  for (std::size_t i = 0; i < n; ++i) weighted[i] = ext.a0[i].real() * psibar_psi[i];
  const RadialDensity w = make_density(grid, std::move(weighted), options.modulation);
  const double omega = std::abs(w.modulation);
  const FourPotential ret = helmholtz_potential(w, omega, PotentialKind::Retarded);
  const FourPotential adv = helmholtz_potential(w, omega, PotentialKind::Advanced);
  std::vector<cplx> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = ret.a0[i] - adv.a0[i];
  report.ret_adv_norm = l2_norm(*grid, diff);

  // bracket (-a_rad + B eta0) acting on Psi and kappa^2 (a_rad - B eta0) on Phi,
  // B = 2 e^2 / K^2 * e * (ret - adv)
  std::vector<double> t_psi(n, 0.0), t_phi(n, 0.0), ref(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx b = 2.0 * e * e * e * diff[i];
    const double s_rad = a_rad.scalar[i];
    for (std::size_t k = 0; k < na; ++k) {
      const RealSpinor8 &p = phi[i * na + k];
      const RealSpinor8 e0p = set.eta[0] * p;
      const Eigen::Matrix<cplx, 8, 1> tp = -s_rad * p.cast<cplx>() + b * e0p.cast<cplx>();
      const Eigen::Matrix<cplx, 8, 1> tf = kKappa * kKappa * (s_rad * p.cast<cplx>() - b * e0p.cast<cplx>());
      t_psi[i] += ang.weight[k] * tp.squaredNorm();
      t_phi[i] += ang.weight[k] * tf.squaredNorm();
      ref[i] += ang.weight[k] * (a_ext.scalar[i] * a_ext.scalar[i]) * p.squaredNorm();
    }
  }
  const double scale = std::sqrt(grid->integrate_r2(ref));
  const double src = std::sqrt(grid->integrate_r2(t_psi)) + std::sqrt(grid->integrate_r2(t_phi));
  report.source_norm = scale > 0.0 ? src / scale : src;

  report.phi1_zero = report.a_rad_norm <= report.thresholds.a_rad &&
                     report.ret_adv_norm <= report.thresholds.ret_adv &&
                     report.source_norm <= report.thresholds.source;
  return report;
}

} // namespace rdf
