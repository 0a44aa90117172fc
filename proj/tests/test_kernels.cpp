#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rdf/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rdf::kernels;

namespace {

struct Problem {
  std::vector<double> ws, inner;
  std::vector<cplx> outer;
};

Problem random_problem(std::size_t n, double omega, double sign, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Problem p;
  p.ws.resize(n);
  p.inner.resize(n);
  p.outer.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = 1e-3 * std::exp(12.0 * double(i) / double(n));
    p.ws[i] = u(rng) * r;
    if (omega == 0.0) {
      p.inner[i] = 1.0;
      p.outer[i] = 1.0 / r;
    } else {
      const double x = omega * r;
      p.inner[i] = std::sin(x) / x;
      p.outer[i] = cplx(std::cos(x), sign * std::sin(x)) / r;
    }
  }
  return p;
}

double rel_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den == 0.0 ? num : num / den;
}

} // namespace

TEST_CASE("serial, parallel and prefix Green sums agree") {
  for (double omega : {0.0, 0.05, 1.3}) {
    for (std::size_t n : {1u, 2u, 17u, 63u, 64u, 65u, 129u, 600u}) {
      CAPTURE(omega);
      CAPTURE(n);
      const Problem p = random_problem(n, omega, 1.0, unsigned(n) + 11u);
      std::vector<cplx> s(n), par(n), pre(n);
      green_sum_serial(p.ws, p.inner, p.outer, s);
      green_sum_parallel(p.ws, p.inner, p.outer, par);
      green_sum_prefix(p.ws, p.inner, p.outer, pre);
      CHECK(rel_diff(par, s) <= 1e-12);
      CHECK(rel_diff(pre, s) <= 1e-12);
    }
  }
}

TEST_CASE("parallel Green sum is deterministic") {
  const Problem p = random_problem(1500, 0.3, 1.0, 5);
  std::vector<cplx> a(1500), b(1500);
  green_sum_parallel(p.ws, p.inner, p.outer, a);
  green_sum_parallel(p.ws, p.inner, p.outer, b);
  CHECK(a == b);
  CHECK(max_threads() >= 1);
}

TEST_CASE("reversing the outgoing phase conjugates the sum") {
  const Problem ret = random_problem(400, 0.7, 1.0, 9);
  const Problem adv = random_problem(400, 0.7, -1.0, 9);
  std::vector<cplx> a(400), b(400);
  green_sum_parallel(ret.ws, ret.inner, ret.outer, a);
  green_sum_parallel(adv.ws, adv.inner, adv.outer, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - std::conj(b[i])));
  CHECK(worst == 0.0);
}

TEST_CASE("point source reproduces the kernel") {
  // single weight at node j: out_i = inner(r<) outer(r>)
  const Problem p0 = random_problem(50, 0.0, 1.0, 1);
  std::vector<double> ws(50, 0.0);
  ws[20] = 1.0;
  std::vector<cplx> out(50);
  green_sum_parallel(ws, p0.inner, p0.outer, out);
  for (std::size_t i = 0; i < 50; ++i) {
    const cplx expect = i >= 20 ? p0.outer[i] : p0.outer[20];
    CHECK(std::abs(out[i] - expect) <= 1e-15 * std::abs(expect));
  }
}

#ifdef _OPENMP
TEST_CASE("parallel Green sum does not depend on the thread count") {
  const Problem p = random_problem(3001, 0.2, 1.0, 17);
  std::vector<cplx> one(3001), many(3001);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  green_sum_parallel(p.ws, p.inner, p.outer, one);
  omp_set_num_threads(7);
  green_sum_parallel(p.ws, p.inner, p.outer, many);
  omp_set_num_threads(saved);
  CHECK(one == many);
}
#endif
