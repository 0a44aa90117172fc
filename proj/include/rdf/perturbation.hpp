#pragma once
// Coupling operators a = (e/K) A_b eta^b for time-component potentials and
// the first-order perturbation source of the reduced real Dirac equation.
//
// Natural units: K = m c^2 = 1 and kappa (inverse Compton length) = 1.

#include <vector>

#include "rdf/algebra.hpp"
#include "rdf/potentials.hpp"
#include "rdf/radial.hpp"

namespace rdf {

struct CouplingOperator {
  GridPtr grid;               // may be null for grid-free samples
  std::vector<double> scalar; // e A0 / K per sample
  RealMatrix8 eta0;

  std::size_t size() const { return scalar.size(); }
  RealMatrix8 value(std::size_t i) const { return scalar[i] * eta0; }
};

CouplingOperator coupling_from_potential(const FourPotential &pot, const EtaSet &set,
                                         const PhysParams &params);

// Grid-free operator with the given scalar samples.
CouplingOperator coupling_from_scalars(std::vector<double> scalars, const EtaSet &set);

// max_r |(1 - s + s^2)(1 - s^2) - (1 - s)| over samples with r >= r_min, where
// s is the scalar profile. Throws ExpansionDomain if |s| >= 1 in that range.
double quadratic_identity_residual(const CouplingOperator &a, double r_min = 0.0);

// Matrix form: max_r || (1 - a + a^2)(1 - a^2) - (1 - a) - (a^3 - a^4) ||_max.
double quadratic_remainder_deviation(const CouplingOperator &a, double r_min = 0.0);

struct SymmetricProduct {
  std::vector<double> scalar; // ab + ba = scalar * I
  double off_scalar_residue = 0.0;
};

// Throws GridMismatch.
SymmetricProduct symmetric_product(const CouplingOperator &a, const CouplingOperator &b);

// a_rad = (e/K)(A_total - (A_self + A_ext)) eta^0. Throws GridMismatch.
CouplingOperator radiation_coupling(const FourPotential &total, const FourPotential &self_pot,
                                    const FourPotential &ext, const EtaSet &set,
                                    const PhysParams &params);

// Lowest-order partner field Psi = kappa (1 + a) N Phi of the stationary
// solution family, with N = kappa^{-1} (1 + a)^{-1} so that Psi = Phi.
// Evaluated explicitly for a = s eta^0.
// Throws ExpansionDomain when 1 + a is singular (|1 - s^2| < 1e-8).
RealSpinor8 psi_from_phi(const RealSpinor8 &phi, double coupling_scalar, const EtaSet &set);

// kappa^2 Phibar eta^0 Phi + Psibar eta^0 Psi with Phibar = Phi^T eta^0.
double real_domain_density(const RealSpinor8 &phi, const RealSpinor8 &psi, const EtaSet &set);

struct PerturbationThresholds {
  double a_rad = 1e-14;
  double ret_adv = 1e-12;
  double source = 1e-10;
};

struct PerturbationReport {
  double a_rad_norm = 0.0;
  double ret_adv_norm = 0.0;
  double source_norm = 0.0;
  bool phi1_zero = false;
  PerturbationThresholds thresholds;
};

struct SourceOptions {
  // Harmonic modulation imposed on the weighted source density. Stationary
  // states carry none.
  double modulation = 0.0;
  bool require_stationary = true;
};

// Throws NotStationary when options.modulation != 0 and
// options.require_stationary is set.
PerturbationReport first_order_source(const RadialSolution &sol, const PhysParams &params,
                                      const EtaSet &set, const SMap &map,
                                      const SourceOptions &options = {});

} // namespace rdf
