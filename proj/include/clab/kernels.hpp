#pragma once

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define CLAB_X86_64 1
#else
#define CLAB_X86_64 0
#endif

namespace clab::kern {

/**
 * Data-parallel inner-loop kernels used by the quadrature and Galerkin
 * assembly paths. Every kernel has a scalar reference implementation and,
 * on x86-64, an AVX2 variant selected once at startup. The two variants
 * agree up to floating-point reassociation; equivalence is covered by
 * dedicated tests.
 */

/** Name of the active backend: "scalar" or "avx2". */
const char* backend_name();

/** True when the AVX2 variants are compiled in and the CPU supports them. */
bool avx2_active();

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
/** Triple product reduction sum_i x_i * y_i * z_i. */
double dot3(const double* x, const double* y, const double* z, std::size_t n);

/**
 * One harmonic of a trigonometric series, fused accumulate-and-rotate.
 *
 * On entry (c, s) hold cos(k*theta_j), sin(k*theta_j) per node. The kernel
 * accumulates the order-k terms of the series and its first two derivatives,
 *
 *   val  += a*c + b*s
 *   dval += k*(b*c - a*s)
 *   ddval-= k^2*(a*c + b*s)
 *
 * then advances (c, s) by the node angle: (c,s) <- (c*rc - s*rs, s*rc + c*rs),
 * where (rc, rs) = (cos(theta_j), sin(theta_j)) per node.
 */
void harmonic_step(double* c, double* s, const double* rc, const double* rs,
                   int k, double a, double b,
                   double* val, double* dval, double* ddval, std::size_t n);

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* y, const double* z, std::size_t n);
void harmonic_step(double* c, double* s, const double* rc, const double* rs,
                   int k, double a, double b,
                   double* val, double* dval, double* ddval, std::size_t n);
} // namespace scalar

#if CLAB_X86_64
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* y, const double* z, std::size_t n);
void harmonic_step(double* c, double* s, const double* rc, const double* rs,
                   int k, double a, double b,
                   double* val, double* dval, double* ddval, std::size_t n);
} // namespace avx2
#endif

} // namespace clab::kern
