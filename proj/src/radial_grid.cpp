#include <cmath>
#include <cstdlib>
#include <string>

#include "rdf/errors.hpp"
#include "rdf/radial.hpp"

namespace rdf {

double PhysParams::proton_charge() const { return std::sqrt(alpha); }

void validate(const PhysParams &params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
    throw PreconditionError("alpha must be positive and finite");
  if (params.Z < 1) throw PreconditionError("Z must be >= 1");
  if (params.z_alpha() >= 1.0)
    throw SupercriticalCoupling("Z alpha = " + std::to_string(params.z_alpha()) +
                                " >= 1: no kappa = -1 bound state");
}

void validate(const StateLabel &label) {
  const int ak = std::abs(label.kappa);
  if (label.n < 1) throw InvalidLabel("n must be >= 1");
  if (label.kappa == 0) throw InvalidLabel("kappa must be nonzero");
  if (ak > label.n || label.kappa == label.n)
    throw InvalidLabel("no state with n = " + std::to_string(label.n) +
                       ", kappa = " + std::to_string(label.kappa));
  if (label.two_mj % 2 == 0 || std::abs(label.two_mj) > label.two_j())
    throw InvalidLabel("m_j = " + std::to_string(label.two_mj) +
                       "/2 is not allowed for kappa = " + std::to_string(label.kappa));
}

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t points) {
  if (points < 100)
    throw GridTooCoarse("radial grid needs at least 100 points, got " +
                        std::to_string(points));
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw PreconditionError("radial grid needs 0 < r_min < r_max");
  const double x0 = std::log(r_min);
  h_ = (std::log(r_max) - x0) / double(points - 1);
  r_.resize(points);
  for (std::size_t i = 0; i < points; ++i) r_[i] = std::exp(x0 + h_ * double(i));
  r_.front() = r_min;
  r_.back() = r_max;
}

double RadialGrid::integrate_r2(const std::vector<double> &f) const {
  double s = 0.0;
  const std::size_t n = r_.size();
  for (std::size_t i = 1; i + 1 < n; ++i) s += f[i] * r_[i] * r_[i] * r_[i];
  s += 0.5 * (f[0] * r_[0] * r_[0] * r_[0] + f[n - 1] * r_[n - 1] * r_[n - 1] * r_[n - 1]);
  return s * h_;
}

GridPtr default_grid(const PhysParams &params, int n, std::size_t points) {
  const double bohr = 1.0 / params.z_alpha();
  return std::make_shared<const RadialGrid>(1e-4 * bohr, 40.0 * n * bohr, points);
}

int count_nodes(const std::vector<double> &v) {
  int nodes = 0;
  double last = 0.0;
  for (double x : v) {
    if (x == 0.0) continue;
    if (last != 0.0 && (x > 0.0) != (last > 0.0)) ++nodes;
    last = x;
  }
  return nodes;
}

} // namespace rdf
