#include "rdf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdf/errors.hpp"

namespace rdf {

namespace {

constexpr cplx I{0.0, 1.0};

// Signed permutation O with canonical(phi_a) = sqrt(2) O Phi. Fixed so that
// the 2s_{1/2}, m = +1/2 stationary state has zero rows 3-4 and the cos/sin
// layout (-g cos, -g sin | f c cos, f c sin | -f s cos(T-phi), f s sin(T-phi))
// with T = k0 x0.
RealMatrix8 s_permutation() {
  RealMatrix8 o = RealMatrix8::Zero();
  o(0, 0) = -1.0; // Re phi_a0 = -Phi_0
  o(1, 1) = 1.0;  // Im phi_a0 =  Phi_1
  o(2, 2) = -1.0; // Re phi_a1 = -Phi_2
  o(3, 3) = 1.0;  // Im phi_a1 =  Phi_3
  o(4, 5) = -1.0; // Re phi_a2 = -Phi_5
  o(5, 4) = -1.0; // Im phi_a2 = -Phi_4
  o(6, 7) = -1.0; // Re phi_a3 = -Phi_7
  o(7, 6) = 1.0;  // Im phi_a3 =  Phi_6
  return o;
}

double max_abs(const ComplexSpinor4 &v) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(v(i)));
  return m;
}

} // namespace

std::array<ComplexMatrix4, 4> dirac_gammas() {
  std::array<ComplexMatrix4, 4> g;
  for (auto &m : g) m.setZero();
  g[0](0, 0) = g[0](1, 1) = 1.0;
  g[0](2, 2) = g[0](3, 3) = -1.0;

  // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
  using Pauli = Eigen::Matrix<cplx, 2, 2>;
  Pauli s1, s2, s3;
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, -I, I, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  const std::array<Pauli, 3> sigma{s1, s2, s3};
  for (int k = 0; k < 3; ++k) {
    g[k + 1].block<2, 2>(0, 2) = sigma[k];
    g[k + 1].block<2, 2>(2, 0) = -sigma[k];
  }
  return g;
}

RealMatrix8 realify(const ComplexMatrix4 &m) {
  RealMatrix8 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double a = m(i, j).real();
      const double b = m(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return r;
}

EtaSet build_eta_set() {
  // O is orthogonal, so the sqrt(2) scale of the S map cancels in the
  // similarity transform and every entry stays in {0, +-1}.
  const RealMatrix8 o = s_permutation();
  const auto gammas = dirac_gammas();
  EtaSet set;
  for (int a = 0; a < 4; ++a) set.eta[a] = o.transpose() * realify(gammas[a]) * o;
  set.J = o.transpose() * realify(ComplexMatrix4::Identity() * I) * o;
  return set;
}

double clifford_residual(const EtaSet &set) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      const RealMatrix8 ac = set.eta[a] * set.eta[b] + set.eta[b] * set.eta[a] -
                             2.0 * metric(a, b) * RealMatrix8::Identity();
      worst = std::max(worst, ac.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

SMap::SMap(const RealMatrix8 &matrix, const ComplexMatrix4 &n_b)
    : matrix_(matrix), n_b_(n_b) {
  Eigen::Matrix<cplx, 4, 8> u;
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 8; ++j)
      u(k, j) = cplx(matrix(2 * k, j), matrix(2 * k + 1, j));
  s_.topRows<4>() = u;
  s_.bottomRows<4>() = n_b * u.conjugate();
  s_inv_ = s_.inverse();
}

SMap SMap::from_complex(const ComplexMatrix8 &s, const ComplexMatrix4 &n_b) {
  SMap m;
  m.n_b_ = n_b;
  m.s_ = s;
  m.s_inv_ = s.inverse();
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 8; ++j) {
      m.matrix_(2 * k, j) = s(k, j).real();
      m.matrix_(2 * k + 1, j) = s(k, j).imag();
    }
  }
  return m;
}

SMap build_s_map() {
  const auto gammas = dirac_gammas();
  return SMap(std::sqrt(2.0) * s_permutation(), I * gammas[2]);
}

RealSpinor8 s_encode(const ComplexSpinor4 &phi_a, const SMap &map) {
  Eigen::Matrix<cplx, 8, 1> pair;
  pair.head<4>() = phi_a;
  pair.tail<4>() = map.n_b() * phi_a.conjugate();
  const Eigen::Matrix<cplx, 8, 1> x = map.full_inverse() * pair;

  const double scale = std::max(x.cwiseAbs().maxCoeff(), max_abs(phi_a));
  const double residue = x.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-10 * std::max(scale, 1e-300) && residue > 0.0) {
    throw NonRealResult("s_encode: imaginary residue " + std::to_string(residue) +
                        " (S and N_b are inconsistent)");
  }
  return x.real();
}

ComplexSpinor4 s_decode(const RealSpinor8 &phi, const SMap &map) {
  const Eigen::Matrix<cplx, 8, 1> pair = map.full() * phi.cast<cplx>();
  const ComplexSpinor4 phi_a = pair.head<4>();
  const ComplexSpinor4 phi_b = pair.tail<4>();
  const double err = max_abs(phi_b - map.n_b() * phi_a.conjugate());
  const double scale = std::max(max_abs(phi_a), max_abs(phi_b));
  if (err > 1e-10 * std::max(scale, 1e-300) && err > 0.0) {
    throw ConjugacyViolation("s_decode: phi_b deviates from N_b conj(phi_a) by " +
                             std::to_string(err));
  }
  return phi_a;
}

double s_round_trip_residual(const SMap &map) {
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const RealSpinor8 e = RealSpinor8::Unit(k);
    worst = std::max(worst, (s_encode(s_decode(e, map), map) - e).cwiseAbs().maxCoeff());
  }
  return worst;
}

} // namespace rdf
