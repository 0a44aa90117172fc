#include <cmath>

#include "rdf/radial.hpp"

namespace rdf {

namespace {

ComplexSpinor4 assemble(const StateLabel &label, double energy, double g, double f,
                        double theta, double phi, double x0) {
  const auto upper = spinor_harmonic(label.kappa, label.two_mj, theta, phi);
  const auto lower = spinor_harmonic(-label.kappa, label.two_mj, theta, phi);
  const cplx phase = std::exp(cplx(0.0, -energy * x0));
  ComplexSpinor4 psi;
  psi(0) = g * upper(0);
  psi(1) = g * upper(1);
  psi(2) = cplx(0.0, f) * lower(0);
  psi(3) = cplx(0.0, f) * lower(1);
  return psi * phase;
}

} // namespace

ComplexSpinor4 stationary_spinor(const RadialSolution &sol, const SpacetimePoint &p) {
  const auto [g, f] = sol.at(p.r);
  return assemble(sol.label, sol.energy, g, f, p.theta, p.phi, p.x0);
}

ComplexSpinor4 stationary_spinor_at_node(const RadialSolution &sol, std::size_t i,
                                         double theta, double phi, double x0) {
  return assemble(sol.label, sol.energy, sol.g[i], sol.f[i], theta, phi, x0);
}

RealSpinor8 build_phi_state(const RadialSolution &sol, const SMap &map,
                            const SpacetimePoint &p) {
  return s_encode(stationary_spinor(sol, p), map);
}

} // namespace rdf
