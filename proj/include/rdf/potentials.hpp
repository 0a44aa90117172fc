#pragma once
// Charge densities and time-component potentials on a radial grid.
//
// Units are Gaussian natural units: e^2 = alpha, the proton carries
// |e| = sqrt(alpha), the electron e = -sqrt(alpha). Potentials solve
// lap A0 = -4 pi rho in the static case; time-harmonic potentials use the
// angle-averaged spherical-wave kernels (see kernels.hpp).

#include <vector>

#include "rdf/radial.hpp"

namespace rdf {

enum class PotentialKind { Static, Retarded, Advanced };

const char *to_string(PotentialKind kind);

struct RadialDensity {
  GridPtr grid;
  std::vector<double> rho;
  double total_charge = 0.0; // int rho 4 pi r^2 dr
  double modulation = 0.0;   // harmonic frequency carried by the source
};

// Fills total_charge from rho.
RadialDensity make_density(GridPtr grid, std::vector<double> rho, double modulation = 0.0);

struct FourPotential {
  GridPtr grid;
  std::vector<cplx> a0; // spatial components are zero in this scope
  double omega = 0.0;
  PotentialKind kind = PotentialKind::Static;

  std::vector<double> real_a0() const;
};

// A0 = Z |e| / r of a nucleus at rest.
FourPotential coulomb_external(const PhysParams &params, GridPtr grid);

// rho = e (g^2 + f^2) / 4 pi, rescaled so the grid quadrature gives exactly e.
RadialDensity charge_density(const RadialSolution &sol, const PhysParams &params);

// Static potential of a spherical density by Green-function quadrature.
FourPotential radial_poisson(const RadialDensity &rho);

// Time-harmonic potential with kernel e^{+i w R}/R (retarded) or
// e^{-i w R}/R (advanced). At omega == 0 this is radial_poisson.
FourPotential helmholtz_potential(const RadialDensity &rho, double omega, PotentialKind kind);

// L2 norm, int |A_ret - A_adv|^2 r^2 dr, of the retarded/advanced difference.
double ret_adv_difference(const RadialDensity &rho, double omega);

// Relative L2 residual of lap A0 + 4 pi rho (second-order differences).
// Falls back to the scale of A0 / r^2 when rho vanishes.
double laplacian_residual(const FourPotential &pot, const RadialDensity &rho);

// max |r A0(r) - Q| / |Q| over the outermost `tail_fraction` of the grid.
double gauss_law_deviation(const FourPotential &pot, const RadialDensity &rho,
                           double tail_fraction = 0.05);

// Pointwise sum. Throws GridMismatch.
FourPotential operator+(const FourPotential &a, const FourPotential &b);

// sqrt(int |v|^2 r^2 dr)
double l2_norm(const RadialGrid &grid, const std::vector<cplx> &v);
double l2_norm(const RadialGrid &grid, const std::vector<double> &v);

void require_same_grid(const GridPtr &a, const GridPtr &b, const char *where);

} // namespace rdf
