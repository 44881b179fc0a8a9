#include "fbfpen/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace fbfpen::kernels {

namespace serial {

void clamp(const double* x, double* out, std::size_t n, double lo, double hi) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::min(hi, std::max(lo, x[i]));
}

void forward_combine(const double* x, const double* d, const double* e,
                     double a, double b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] - a * d[i] - b * e[i];
}

void correction_combine(const double* dp, const double* dn, const double* ep,
                        const double* en, const double* y, double a, double b,
                        double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a * (dp[i] - dn[i]) + b * (ep[i] - en[i]) + y[i];
}

void axpy(const double* x, const double* y, double a, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] + a * y[i];
}

void relax_toward(double* z, const double* x, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        z[i] += w * (x[i] - z[i]);
}

void masked_residual(const double* x, const double* b, const unsigned char* mask,
                     double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = mask[i] ? x[i] - b[i] : 0.0;
}

void disk_project(const double* gx, const double* gy, double* ox, double* oy,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        const double s = std::max(1.0, r);
        ox[i] = gx[i] / s;
        oy[i] = gy[i] / s;
    }
}

void grad_forward(const double* img, double* gx, double* gy,
                  std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t k = i * cols + j;
            gx[k] = (i + 1 < rows) ? img[k + cols] - img[k] : 0.0;
            gy[k] = (j + 1 < cols) ? img[k + 1] - img[k] : 0.0;
        }
    }
}

void div_adjoint(const double* gx, const double* gy, double* out,
                 std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t k = i * cols + j;
            double v = 0.0;
            if (i > 0) v += gx[k - cols];
            if (i + 1 < rows) v -= gx[k];
            if (j > 0) v += gy[k - 1];
            if (j + 1 < cols) v -= gy[k];
            out[k] = v;
        }
    }
}

namespace {
// Fixed-order chunked reduction: partial sums over reduce_chunk-sized
// blocks are folded left to right, independent of the thread count.
template <typename Partial>
double chunked_reduce(std::size_t n, Partial partial) {
    const std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
    if (nchunks <= 1) return partial(0, n);
    std::vector<double> parts(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c)
        parts[c] = partial(c * reduce_chunk, std::min(n, (c + 1) * reduce_chunk));
    double acc = 0.0;
    for (double p : parts) acc += p;
    return acc;
}
} // namespace

double dot(const double* x, const double* y, std::size_t n) {
    return chunked_reduce(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
        return s;
    });
}

double sumsq(const double* x, std::size_t n) {
    return chunked_reduce(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * x[i];
        return s;
    });
}

double sumsq_diff(const double* x, const double* y, std::size_t n) {
    return chunked_reduce(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double d = x[i] - y[i];
            s += d * d;
        }
        return s;
    });
}

double cross_norm(const double* gx, const double* gy, std::size_t n) {
    return chunked_reduce(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        return s;
    });
}

} // namespace serial

namespace {
inline bool parallel(std::size_t n) { return n >= parallel_cutoff; }

template <typename Partial>
double chunked_reduce_omp(std::size_t n, Partial partial) {
    const std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
    if (nchunks <= 1) return partial(0, n);
    std::vector<double> parts(nchunks);
    const std::int64_t m = static_cast<std::int64_t>(nchunks);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t c = 0; c < m; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * reduce_chunk;
        parts[c] = partial(lo, std::min(n, lo + reduce_chunk));
    }
    double acc = 0.0;
    for (double p : parts) acc += p;
    return acc;
}
} // namespace

void clamp(const double* x, double* out, std::size_t n, double lo, double hi) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i)
        out[i] = std::min(hi, std::max(lo, x[i]));
}

void forward_combine(const double* x, const double* d, const double* e,
                     double a, double b, double* out, std::size_t n) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i)
        out[i] = x[i] - a * d[i] - b * e[i];
}

void correction_combine(const double* dp, const double* dn, const double* ep,
                        const double* en, const double* y, double a, double b,
                        double* out, std::size_t n) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i)
        out[i] = a * (dp[i] - dn[i]) + b * (ep[i] - en[i]) + y[i];
}

void axpy(const double* x, const double* y, double a, double* out, std::size_t n) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i)
        out[i] = x[i] + a * y[i];
}

void relax_toward(double* z, const double* x, double w, std::size_t n) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i)
        z[i] += w * (x[i] - z[i]);
}

void masked_residual(const double* x, const double* b, const unsigned char* mask,
                     double* out, std::size_t n) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i)
        out[i] = mask[i] ? x[i] - b[i] : 0.0;
}

void disk_project(const double* gx, const double* gy, double* ox, double* oy,
                  std::size_t n) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for if (parallel(n))
    for (std::int64_t i = 0; i < m; ++i) {
        const double r = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        const double s = std::max(1.0, r);
        ox[i] = gx[i] / s;
        oy[i] = gy[i] / s;
    }
}

void grad_forward(const double* img, double* gx, double* gy,
                  std::size_t rows, std::size_t cols) {
    const std::int64_t m = static_cast<std::int64_t>(rows * cols);
#pragma omp parallel for if (parallel(rows * cols))
    for (std::int64_t k = 0; k < m; ++k) {
        const std::size_t i = static_cast<std::size_t>(k) / cols;
        const std::size_t j = static_cast<std::size_t>(k) % cols;
        gx[k] = (i + 1 < rows) ? img[k + cols] - img[k] : 0.0;
        gy[k] = (j + 1 < cols) ? img[k + 1] - img[k] : 0.0;
    }
}

void div_adjoint(const double* gx, const double* gy, double* out,
                 std::size_t rows, std::size_t cols) {
    const std::int64_t m = static_cast<std::int64_t>(rows * cols);
#pragma omp parallel for if (parallel(rows * cols))
    for (std::int64_t k = 0; k < m; ++k) {
        const std::size_t i = static_cast<std::size_t>(k) / cols;
        const std::size_t j = static_cast<std::size_t>(k) % cols;
        double v = 0.0;
        if (i > 0) v += gx[k - cols];
        if (i + 1 < rows) v -= gx[k];
        if (j > 0) v += gy[k - 1];
        if (j + 1 < cols) v -= gy[k];
        out[k] = v;
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    return chunked_reduce_omp(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
        return s;
    });
}

double sumsq(const double* x, std::size_t n) {
    return chunked_reduce_omp(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * x[i];
        return s;
    });
}

double sumsq_diff(const double* x, const double* y, std::size_t n) {
    return chunked_reduce_omp(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double d = x[i] - y[i];
            s += d * d;
        }
        return s;
    });
}

double cross_norm(const double* gx, const double* gy, std::size_t n) {
    return chunked_reduce_omp(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        return s;
    });
}

bool all_finite(const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i])) return false;
    return true;
}

} // namespace fbfpen::kernels
