#include <cmath>
#include <cstdlib>

#include "rdf/radial.hpp"

namespace rdf {

namespace {

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  if (std::abs(m) > l) return 0.0;
  const int am = std::abs(m);
  // std::sph_legendre carries the Condon-Shortley phase
  const cplx y = std::sph_legendre(unsigned(l), unsigned(am), theta) *
                 std::exp(cplx(0.0, am * phi));
  if (m >= 0) return y;
  return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

} // namespace

Eigen::Matrix<cplx, 2, 1> spinor_harmonic(int kappa, int two_m, double theta, double phi) {
  const int l = kappa < 0 ? -kappa - 1 : kappa;
  const double denom = 2.0 * l + 1.0;
  // m -/+ 1/2 as integers
  const int m_dn = (two_m - 1) / 2;
  const int m_up = (two_m + 1) / 2;
  const double plus = (2.0 * l + two_m + 1.0) / 2.0;  // l + m + 1/2
  const double minus = (2.0 * l - two_m + 1.0) / 2.0; // l - m + 1/2

  Eigen::Matrix<cplx, 2, 1> omega;
  if (kappa < 0) { // j = l + 1/2
    omega(0) = std::sqrt(plus / denom) * spherical_harmonic(l, m_dn, theta, phi);
    omega(1) = std::sqrt(minus / denom) * spherical_harmonic(l, m_up, theta, phi);
  } else { // j = l - 1/2
    omega(0) = -std::sqrt(minus / denom) * spherical_harmonic(l, m_dn, theta, phi);
    omega(1) = std::sqrt(plus / denom) * spherical_harmonic(l, m_up, theta, phi);
  }
  return omega;
}

} // namespace rdf
