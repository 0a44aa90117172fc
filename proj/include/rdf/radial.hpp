#pragma once
// Hydrogen-like Dirac-Coulomb bound states in Compton units
// (hbar = c = m = 1, energies in mc^2, lengths in hbar/mc).
//
// Radial convention: psi = ( g(r) Omega_{kappa m}, i f(r) Omega_{-kappa m} )
// so that
//   g' = -(1 + kappa) g / r + (E - V + 1) f
//   f' = -(1 - kappa) f / r - (E - V - 1) g,     V = -Z alpha / r,
// normalised as int (g^2 + f^2) r^2 dr = 1 with g > 0 near the origin.

#include <memory>
#include <vector>

#include "rdf/algebra.hpp"

namespace rdf {

struct PhysParams {
  double alpha = 0.0072973525693;
  int Z = 1;

  double z_alpha() const { return Z * alpha; }
  // Gaussian natural units: e^2 = alpha, electron charge e = -|e|.
  double proton_charge() const;
  double electron_charge() const { return -proton_charge(); }
};

// Throws SupercriticalCoupling for Z alpha >= 1 and PreconditionError for
// alpha <= 0 or Z < 1.
void validate(const PhysParams &params);

struct StateLabel {
  int n = 1;
  int kappa = -1;
  int two_mj = 1; // 2 m_j

  int l() const { return kappa < 0 ? -kappa - 1 : kappa; }
  int two_j() const { return 2 * (kappa < 0 ? -kappa : kappa) - 1; }
  // Interior sign changes of g.
  int expected_nodes() const { return n - l() - 1; }
};

// Throws InvalidLabel.
void validate(const StateLabel &label);

// Logarithmic radial grid, uniform in x = ln r.
class RadialGrid {
public:
  // Throws GridTooCoarse for fewer than 100 points and PreconditionError for
  // a non-positive or empty range.
  RadialGrid(double r_min, double r_max, std::size_t points);

  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  const std::vector<double> &r() const { return r_; }
  double log_step() const { return h_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }

  // Trapezoid in x of f(r) r^3, i.e. int f r^2 dr.
  double integrate_r2(const std::vector<double> &f) const;

  bool operator==(const RadialGrid &other) const { return r_ == other.r_; }

private:
  std::vector<double> r_;
  double h_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline constexpr std::size_t kDefaultGridPoints = 4000;

// r in [1e-4, 40 n] Bohr radii of the nucleus, i.e. [1e-4, 40 n] / (Z alpha)
// Compton lengths.
GridPtr default_grid(const PhysParams &params, int n,
                     std::size_t points = kDefaultGridPoints);

// Closed-form relativistic (Sommerfeld) energy in units of mc^2.
double sommerfeld_energy(const StateLabel &label, const PhysParams &params);

struct RadialSolution {
  StateLabel label;
  double energy = 0.0;
  GridPtr grid;
  std::vector<double> g;
  std::vector<double> f;

  std::size_t match_index = 0;
  int nodes = 0;
  // max(|g|, |f|) at r_max over max |g|.
  double tail_ratio = 0.0;

  // Radial amplitudes at an arbitrary r inside the grid (monotone cubic in
  // ln r). Throws OutOfGrid.
  std::pair<double, double> at(double r) const;
};

// Two-sided shooting with log-derivative matching. tol bounds the final energy
// bracket relative to the binding energy.
RadialSolution solve_radial(const StateLabel &label, const PhysParams &params,
                            GridPtr grid, double tol = 1e-8);

// Convenience: default grid for label.n.
RadialSolution solve_radial(const StateLabel &label, const PhysParams &params,
                            double tol = 1e-8);

// Count of interior sign changes.
int count_nodes(const std::vector<double> &v);

struct ResidualResult {
  double value = 0.0;
  bool zero_state = false;
};

// Relative L2 residual of the radial equations evaluated with fourth-order
// central differences in ln r.
ResidualResult dirac_residual(const RadialSolution &sol, const PhysParams &params);

// Radial overlap int (g1 g2 + f1 f2) r^2 dr. Throws GridMismatch.
double radial_overlap(const RadialSolution &a, const RadialSolution &b);

//------------------------------------------------------------------------------
// Stationary field states.

struct SpacetimePoint {
  double r = 1.0;
  double theta = 0.0;
  double phi = 0.0; // azimuth
  double x0 = 0.0;  // c t
};

// Spinor spherical harmonic Omega_{kappa m}(theta, phi), Condon-Shortley phases.
Eigen::Matrix<cplx, 2, 1> spinor_harmonic(int kappa, int two_m, double theta, double phi);

// Complex stationary spinor phi_a at a point (radial values interpolated).
ComplexSpinor4 stationary_spinor(const RadialSolution &sol, const SpacetimePoint &p);
// Same, at grid node i.
ComplexSpinor4 stationary_spinor_at_node(const RadialSolution &sol, std::size_t i,
                                         double theta, double phi, double x0);

// Real field value Phi = s_encode(phi_a). Throws OutOfGrid.
RealSpinor8 build_phi_state(const RadialSolution &sol, const SMap &map,
                            const SpacetimePoint &p);

} // namespace rdf
