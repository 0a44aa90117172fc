#pragma once
// Spherical Green-function sums on a radial grid.
//
// For a spherically symmetric source and a separable kernel
//   K(r, r') = inner(r_<) * outer(r_>),
// the field at node i is
//   out_i = sum_j ws_j * K(r_i, r_j),
// where ws_j already carries the quadrature weight and the 4 pi r'^2 volume
// factor. Both 1/|r - r'| (inner = 1, outer = 1/r) and the angle-averaged
// spherical waves e^{+-i w |r - r'|}/|r - r'| (inner = j0(w r),
// outer = e^{+-i w r}/r) have this form.
//
// Three evaluations are provided: a naive O(N^2) pairwise serial reference,
// the OpenMP-parallel production kernel (a blocked prefix/suffix scan), and a
// single-pass serial scan. The parallel kernel uses a fixed block layout, so
// its output does not depend on the number of threads.

#include <complex>
#include <span>

namespace rdf::kernels {

using cplx = std::complex<double>;

void green_sum_serial(std::span<const double> ws, std::span<const double> inner,
                      std::span<const cplx> outer, std::span<cplx> out);

void green_sum_parallel(std::span<const double> ws, std::span<const double> inner,
                        std::span<const cplx> outer, std::span<cplx> out);

void green_sum_prefix(std::span<const double> ws, std::span<const double> inner,
                      std::span<const cplx> outer, std::span<cplx> out);

// Threads the parallel kernels will use (1 without OpenMP).
int max_threads();

} // namespace rdf::kernels
