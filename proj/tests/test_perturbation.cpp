#include <cmath>
#include <random>

#include "doctest.h"
#include "rdf/errors.hpp"
#include "rdf/perturbation.hpp"

using namespace rdf;

namespace {

constexpr double kAlpha = 0.0072973525693;

PhysParams za(double z_alpha) { return PhysParams{z_alpha, 1}; }

CouplingOperator constant(double s, std::size_t n = 5) {
  return coupling_from_scalars(std::vector<double>(n, s), build_eta_set());
}

} // namespace

TEST_CASE("coupling_from_potential") {
  const EtaSet set = build_eta_set();
  const PhysParams p = za(0.2);
  const auto grid = std::make_shared<const RadialGrid>(1.0, 3.0, 101);
  const CouplingOperator a = coupling_from_potential(coulomb_external(p, grid), set, p);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a.scalar[i] == doctest::Approx(-0.2 / (*grid)[i]).epsilon(1e-14));
  const RealMatrix8 sq = a.value(0) * a.value(0);
  CHECK((sq - 0.04 * RealMatrix8::Identity()).cwiseAbs().maxCoeff() <= 1e-14);

  FourPotential zero = coulomb_external(p, grid);
  for (cplx &v : zero.a0) v = 0.0;
  const CouplingOperator z = coupling_from_potential(zero, set, p);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z.value(i).cwiseAbs().maxCoeff() == 0.0);

  FourPotential ret = zero;
  ret.kind = PotentialKind::Retarded;
  CHECK_THROWS_AS(coupling_from_potential(ret, set, p), PreconditionError);
}

TEST_CASE("quadratic identity") {
  CHECK(quadratic_identity_residual(constant(0.1)) == doctest::Approx(0.0009).epsilon(1e-12));
  CHECK(quadratic_identity_residual(constant(0.0)) == 0.0);
  for (double s : {0.05, 0.1, 0.2}) {
    CAPTURE(s);
    const double ratio = quadratic_identity_residual(constant(s)) / (s * s * s);
    CHECK(ratio == doctest::Approx(1.0 - s).epsilon(1e-12));
    CHECK(quadratic_remainder_deviation(constant(s)) <= 1e-13);
    CHECK(quadratic_remainder_deviation(constant(-s)) <= 1e-13);
  }

  SUBCASE("random constant profiles") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-0.95, 0.95);
    std::vector<double> s(64);
    for (double &v : s) v = u(rng);
    const CouplingOperator a = coupling_from_scalars(s, build_eta_set());
    CHECK(quadratic_remainder_deviation(a) <= 1e-13);
  }

  SUBCASE("external Coulomb coupling outside the Z alpha radius") {
    const PhysParams p = za(0.2);
    const auto grid = default_grid(p, 1);
    const CouplingOperator a = coupling_from_potential(coulomb_external(p, grid), build_eta_set(), p);
    CHECK_THROWS_AS(quadratic_identity_residual(a), ExpansionDomain);
    // |s| <= 0.2 from r = 1 on: remainder bounded by s^3 (1 - s)
    const double res = quadratic_identity_residual(a, 1.0);
    CHECK(res <= 0.2 * 0.2 * 0.2 * 1.2);
    CHECK(res > 0.0);
    CHECK(quadratic_remainder_deviation(a, 1.0) <= 1e-13);
  }
}

TEST_CASE("symmetric_product") {
  const EtaSet set = build_eta_set();
  const CouplingOperator a = coupling_from_scalars({-0.2, -0.1, 0.3}, set);
  const CouplingOperator b = coupling_from_scalars({-0.1, 0.4, 0.0}, set);

  const SymmetricProduct aa = symmetric_product(a, a);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(aa.scalar[i] == doctest::Approx(2.0 * a.scalar[i] * a.scalar[i]).epsilon(1e-15));
  CHECK(aa.off_scalar_residue <= 1e-14);

  const SymmetricProduct ab = symmetric_product(a, b);
  CHECK(ab.scalar[0] == doctest::Approx(0.04).epsilon(1e-14));
  CHECK(ab.scalar[2] == 0.0);
  CHECK(ab.off_scalar_residue <= 1e-14);

  const SymmetricProduct a0 = symmetric_product(a, coupling_from_scalars({0.0, 0.0, 0.0}, set));
  for (double v : a0.scalar) CHECK(v == 0.0);

  CHECK_THROWS_AS(symmetric_product(a, coupling_from_scalars({1.0}, set)), GridMismatch);
}

TEST_CASE("radiation_coupling") {
  const EtaSet set = build_eta_set();
  const PhysParams p = za(0.2);
  const RadialSolution sol = solve_radial(StateLabel{1, -1, 1}, p);
  const FourPotential ext = coulomb_external(p, sol.grid);
  const FourPotential self_pot = radial_poisson(charge_density(sol, p));

  SUBCASE("particular solution gives zero") {
    const CouplingOperator a = radiation_coupling(self_pot + ext, self_pot, ext, set, p);
    double worst = 0.0;
    for (double v : a.scalar) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-14);
  }

  SUBCASE("free case") {
    FourPotential none = ext;
    for (cplx &v : none.a0) v = 0.0;
    const CouplingOperator a = radiation_coupling(self_pot, self_pot, none, set, p);
    for (double v : a.scalar) CHECK(v == 0.0);
  }

  SUBCASE("a 1/r perturbation is recovered") {
    const double delta = 1e-3;
    FourPotential total = self_pot + ext;
    for (std::size_t i = 0; i < total.a0.size(); ++i) total.a0[i] += delta / (*sol.grid)[i];
    const CouplingOperator a = radiation_coupling(total, self_pot, ext, set, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double expect = p.electron_charge() * delta / (*sol.grid)[i];
      worst = std::max(worst, std::abs(a.scalar[i] - expect) / std::abs(expect));
    }
    CHECK(worst <= 1e-9);
  }

  SUBCASE("grid mismatch") {
    const FourPotential other = coulomb_external(p, default_grid(p, 2));
    CHECK_THROWS_AS(radiation_coupling(self_pot + ext, self_pot, other, set, p), GridMismatch);
  }
}

TEST_CASE("psi_from_phi") {
  const EtaSet set = build_eta_set();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (double s : {-0.9, -0.2, 0.0, 0.5}) {
    RealSpinor8 phi;
    for (int k = 0; k < 8; ++k) phi(k) = nd(rng);
    CHECK((psi_from_phi(phi, s, set) - phi).cwiseAbs().maxCoeff() <= 1e-13 * phi.cwiseAbs().maxCoeff());
    CHECK(real_domain_density(phi, psi_from_phi(phi, s, set), set) ==
          doctest::Approx(2.0 * phi.squaredNorm()).epsilon(1e-13));
  }
  CHECK_THROWS_AS(psi_from_phi(RealSpinor8::Ones(), 1.0, set), ExpansionDomain);
  CHECK_THROWS_AS(psi_from_phi(RealSpinor8::Ones(), -1.0 + 1e-10, set), ExpansionDomain);
}

TEST_CASE("first_order_source vanishes on stationary states") {
  const EtaSet set = build_eta_set();
  const SMap map = build_s_map();
  for (double z : {kAlpha, 0.2}) {
    for (const StateLabel &label : {StateLabel{1, -1, 1}, StateLabel{2, -1, 1}, StateLabel{2, 1, 1}}) {
      CAPTURE(z);
      CAPTURE(label.n);
      CAPTURE(label.kappa);
      const PhysParams p = za(z);
      const PerturbationReport r = first_order_source(solve_radial(label, p), p, set, map);
      CHECK(r.a_rad_norm <= 1e-14);
      CHECK(r.ret_adv_norm <= 1e-12);
      CHECK(r.source_norm <= 1e-10);
      CHECK(r.phi1_zero);
    }
  }
}

TEST_CASE("first_order_source negative control") {
  const EtaSet set = build_eta_set();
  const SMap map = build_s_map();
  const PhysParams p = za(0.2);
  const RadialSolution sol = solve_radial(StateLabel{1, -1, 1}, p);

  CHECK_THROWS_AS(first_order_source(sol, p, set, map, SourceOptions{0.05, true}), NotStationary);

  const PerturbationReport r = first_order_source(sol, p, set, map, SourceOptions{0.05, false});
  CAPTURE(r.ret_adv_norm);
  CAPTURE(r.source_norm);
  CHECK(r.ret_adv_norm > 1e-3);
  CHECK(r.source_norm > 1e-10);
  CHECK_FALSE(r.phi1_zero);
}
