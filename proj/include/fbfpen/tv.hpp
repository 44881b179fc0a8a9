/* Total-variation image inpainting: the discrete gradient stencil and its
 * adjoint, the isotropic TV objective, the prox/projection formulas of the
 * model
 *
 *   inf { TV_iso(x) : Px = b, x in [0,1]^n }
 *
 * (P the diagonal observation mask), reconstruction quality (ISNR), mask
 * generation, and the builder producing the composite problem the product-
 * space solver runs on.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "fbfpen/core.hpp"
#include "fbfpen/product.hpp"

namespace fbfpen {

/// Grayscale image, row-major, pixel values in [0, 1].
struct Image {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vec pix;
    std::size_t size() const { return rows * cols; }
};

/// Observation mask; true (nonzero) = pixel observed.
struct Mask {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> observed;
    std::size_t size() const { return rows * cols; }
};

/// Discrete gradient pair; gx vanishes on the last row, gy on the last
/// column.
struct GradField {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vec gx, gy;
};

/// Forward differences: gx(i,j) = x(i+1,j) - x(i,j) for i < M (else 0),
/// gy(i,j) = x(i,j+1) - x(i,j) for j < N (else 0).
GradField grad_forward(const Image& img);

/// Exact adjoint of grad_forward, returned as an image-shaped vector.
Vec div_adjoint(const GradField& g);

/// Isotropic total variation, evaluated directly from the defining sums
/// (interior Euclidean pairs plus the two boundary 1-D sums). Agrees with
/// the cross norm of grad_forward.
double tv_iso(const Image& img);

/// sum_ij sqrt(gx^2 + gy^2), the cross norm on gradient fields.
double cross_norm(const GradField& g);

/// Pixelwise projection onto unit disks: (p,q) /= max(1, sqrt(p^2+q^2)).
GradField proj_unit_disks(const GradField& g);

/// Gradient of Psi(x) = 1/2 ||Px - b||^2: zero at unobserved pixels,
/// x - b at observed ones. Lipschitz constant 1.
Vec psi_grad(const Vec& x, const Mask& mask, const Vec& b);

/// Improvement in signal-to-noise ratio in dB:
/// 10 log10(||x - b||^2 / ||x - xn||^2). Returns +inf when xn == x;
/// throws when x == b (undefined reference).
double isnr(const Image& x, const Image& b, const Image& xn);

/// Deterministic mask with exactly round(missing_ratio * M * N) unobserved
/// pixels: a splitmix64-driven Fisher-Yates shuffle of the pixel indices,
/// first k marked missing. Identical masks for identical (M, N, ratio,
/// seed) across platforms.
Mask make_mask(std::size_t rows, std::size_t cols, double missing_ratio,
               std::uint64_t seed);

/// Applies the mask: observed pixels copied, missing pixels set to black.
Image apply_mask(const Image& img, const Mask& mask);

/// The gradient stencil as a LinearMap from images (n) to stacked
/// gradient fields (2n, gx then gy). The norm bound is sqrt(8) unless
/// use_power_estimate is set, in which case a power-iteration estimate
/// (times the safety factor) is used.
LinearMap grad_map(std::size_t rows, std::size_t cols, bool use_power_estimate = false);

/// Composite problem for the inpainting model: box prox for f, the
/// gradient stencil with the unit-disk projection as the term, D == 0,
/// and the observation penalty gradient for B (mu = 1).
CompositeProblem build_inpainting_problem(const Image& b, const Mask& mask,
                                          bool use_power_estimate = false);

/// Piecewise-constant test image (flat background with axis-aligned
/// blocks and a gray band), deterministic in its dimensions.
Image make_phantom(std::size_t rows, std::size_t cols);

} // namespace fbfpen
