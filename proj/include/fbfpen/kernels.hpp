/* Low-level array kernels shared by the solvers and the imaging code.
 *
 * Every kernel has an OpenMP-parallel entry point and a serial reference
 * twin in kernels::serial. The two are kept bitwise identical: elementwise
 * maps compute each output index independently, and reductions accumulate
 * fixed-size chunks in a fixed order, so results do not depend on the
 * number of threads. The benchmark target compares the two variants.
 */
#pragma once

#include <cstddef>

namespace fbfpen::kernels {

// Arrays shorter than this run serially; the cutoff only affects speed,
// never the computed bits.
inline constexpr std::size_t parallel_cutoff = 1u << 15;

// Reductions accumulate per-chunk partial sums of this fixed length and
// fold the partials in chunk order.
inline constexpr std::size_t reduce_chunk = 4096;

// out[i] = x[i] clamped to [lo, hi]
void clamp(const double* x, double* out, std::size_t n, double lo, double hi);

// out[i] = x[i] - a*d[i] - b*e[i]
void forward_combine(const double* x, const double* d, const double* e,
                     double a, double b, double* out, std::size_t n);

// out[i] = a*(dp[i] - dn[i]) + b*(ep[i] - en[i]) + y[i]
void correction_combine(const double* dp, const double* dn, const double* ep,
                        const double* en, const double* y, double a, double b,
                        double* out, std::size_t n);

// out[i] = x[i] + a*y[i]
void axpy(const double* x, const double* y, double a, double* out, std::size_t n);

// z[i] += w*(x[i] - z[i])   (running weighted mean)
void relax_toward(double* z, const double* x, double w, std::size_t n);

// out[i] = mask[i] ? x[i] - b[i] : 0
void masked_residual(const double* x, const double* b, const unsigned char* mask,
                     double* out, std::size_t n);

// (gx[i],gy[i]) /= max(1, hypot(gx[i],gy[i]))   pixel pairs onto unit disks
void disk_project(const double* gx, const double* gy, double* ox, double* oy,
                  std::size_t n);

// Forward differences of a rows x cols row-major image; last row of gx and
// last column of gy are zero.
void grad_forward(const double* img, double* gx, double* gy,
                  std::size_t rows, std::size_t cols);

// Exact adjoint of grad_forward.
void div_adjoint(const double* gx, const double* gy, double* out,
                 std::size_t rows, std::size_t cols);

double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
double sumsq_diff(const double* x, const double* y, std::size_t n);

// sum_i hypot(gx[i], gy[i])
double cross_norm(const double* gx, const double* gy, std::size_t n);

bool all_finite(const double* x, std::size_t n);

namespace serial {
void clamp(const double* x, double* out, std::size_t n, double lo, double hi);
void forward_combine(const double* x, const double* d, const double* e,
                     double a, double b, double* out, std::size_t n);
void correction_combine(const double* dp, const double* dn, const double* ep,
                        const double* en, const double* y, double a, double b,
                        double* out, std::size_t n);
void axpy(const double* x, const double* y, double a, double* out, std::size_t n);
void relax_toward(double* z, const double* x, double w, std::size_t n);
void masked_residual(const double* x, const double* b, const unsigned char* mask,
                     double* out, std::size_t n);
void disk_project(const double* gx, const double* gy, double* ox, double* oy,
                  std::size_t n);
void grad_forward(const double* img, double* gx, double* gy,
                  std::size_t rows, std::size_t cols);
void div_adjoint(const double* gx, const double* gy, double* out,
                 std::size_t rows, std::size_t cols);
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
double sumsq_diff(const double* x, const double* y, std::size_t n);
double cross_norm(const double* gx, const double* gy, std::size_t n);
} // namespace serial

} // namespace fbfpen::kernels
