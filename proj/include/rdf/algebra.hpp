#pragma once
// Real 8-dimensional representation of the Dirac algebra and the map between
// the real field value and its complex spinor counterpart.
//
// Conventions: gamma matrices are in the standard Dirac representation, the
// metric is diag(+1,-1,-1,-1). A real 8-vector Phi is related to the complex
// 4-spinor phi_a by a fixed signed permutation (scaled by sqrt 2) composed
// with the canonical embedding C^4 -> R^8 (z -> (Re z, Im z)). The second
// spinor of the pair is phi_b = N_b conj(phi_a) with N_b = i gamma^2.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace rdf {

using cplx = std::complex<double>;
using RealMatrix8 = Eigen::Matrix<double, 8, 8>;
using ComplexMatrix4 = Eigen::Matrix<cplx, 4, 4>;
using ComplexMatrix8 = Eigen::Matrix<cplx, 8, 8>;
using RealSpinor8 = Eigen::Matrix<double, 8, 1>;
using ComplexSpinor4 = Eigen::Matrix<cplx, 4, 1>;

// Minkowski metric component g^{ab}.
constexpr double metric(int a, int b) {
  if (a != b) return 0.0;
  return a == 0 ? 1.0 : -1.0;
}

// The four real matrices eta^alpha plus the complex structure J (the action
// of multiplication by i on the real field).
struct EtaSet {
  std::array<RealMatrix8, 4> eta;
  RealMatrix8 J;
};

// Standard Dirac-representation gamma matrices.
std::array<ComplexMatrix4, 4> dirac_gammas();

// Realification of a complex 4x4 matrix under the canonical embedding.
RealMatrix8 realify(const ComplexMatrix4 &m);

EtaSet build_eta_set();

// Max-norm deviation of all anticommutators from 2 g^{ab} I.
double clifford_residual(const EtaSet &set);

/// The S-transformation between Phi and the pair (phi_a, phi_b).
///
/// `matrix()` is the real 8x8 map from Phi to the canonical real image of
/// phi_a; `full()` is the complex 8x8 S with S Phi = (phi_a, phi_b).
class SMap {
public:
  SMap(const RealMatrix8 &matrix, const ComplexMatrix4 &n_b);

  // Accepts an arbitrary complex S. Used to exercise the consistency checks
  // with maps whose S and N_b disagree.
  static SMap from_complex(const ComplexMatrix8 &s, const ComplexMatrix4 &n_b);

  const RealMatrix8 &matrix() const { return matrix_; }
  const ComplexMatrix4 &n_b() const { return n_b_; }
  const ComplexMatrix8 &full() const { return s_; }
  const ComplexMatrix8 &full_inverse() const { return s_inv_; }

private:
  SMap() = default;
  RealMatrix8 matrix_;
  ComplexMatrix4 n_b_;
  ComplexMatrix8 s_;
  ComplexMatrix8 s_inv_;
};

SMap build_s_map();

RealSpinor8 s_encode(const ComplexSpinor4 &phi_a, const SMap &map);
ComplexSpinor4 s_decode(const RealSpinor8 &phi, const SMap &map);

// Max-norm round-trip error of real -> complex -> real on the eight unit
// vectors.
double s_round_trip_residual(const SMap &map);

} // namespace rdf
