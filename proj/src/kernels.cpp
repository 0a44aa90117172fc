#include "rdf/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rdf::kernels {

namespace {
constexpr std::size_t kScanBlocks = 64;
}

void green_sum_serial(std::span<const double> ws, std::span<const double> inner,
                      std::span<const cplx> outer, std::span<cplx> out) {
  const std::size_t n = ws.size();
  assert(inner.size() == n && outer.size() == n && out.size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx k = j <= i ? inner[j] * outer[i] : inner[i] * outer[j];
      acc += ws[j] * k;
    }
    out[i] = acc;
  }
}

void green_sum_parallel(std::span<const double> ws, std::span<const double> inner,
                        std::span<const cplx> outer, std::span<cplx> out) {
  const std::size_t n = ws.size();
  assert(inner.size() == n && outer.size() == n && out.size() == n);
  if (n == 0) return;
  // Blocked two-pass scan. The block layout depends only on n, so the
  // summation order (and every bit of the result) is independent of the
  // thread count.
  const std::size_t blocks = std::min<std::size_t>(kScanBlocks, n);
  const std::size_t width = (n + blocks - 1) / blocks;
  std::vector<double> below(blocks + 1, 0.0);
  std::vector<cplx> above(blocks + 1, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = std::size_t(b) * width, hi = std::min(n, lo + width);
    double sb = 0.0;
    cplx sa = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      sb += ws[j] * inner[j];
      sa += ws[j] * outer[j];
    }
    below[std::size_t(b) + 1] = sb;
    above[std::size_t(b)] = sa;
  }
  // below[b]: everything left of block b; above[b]: everything right of it
  for (std::size_t b = 1; b <= blocks; ++b) below[b] += below[b - 1];
  for (std::size_t b = blocks; b-- > 0;) above[b] += above[b + 1];

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = std::size_t(b) * width, hi = std::min(n, lo + width);
    double sb = below[std::size_t(b)];
    for (std::size_t i = lo; i < hi; ++i) {
      sb += ws[i] * inner[i];
      out[i] = sb * outer[i];
    }
    cplx sa = above[std::size_t(b) + 1];
    for (std::size_t i = hi; i-- > lo;) {
      out[i] += inner[i] * sa;
      sa += ws[i] * outer[i];
    }
  }
}

void green_sum_prefix(std::span<const double> ws, std::span<const double> inner,
                      std::span<const cplx> outer, std::span<cplx> out) {
  const std::size_t n = ws.size();
  assert(inner.size() == n && outer.size() == n && out.size() == n);
  double below = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    below += ws[i] * inner[i];
    out[i] = below * outer[i];
  }
  cplx above = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    out[i] += inner[i] * above;
    above += ws[i] * outer[i];
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace rdf::kernels
