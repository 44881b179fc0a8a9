#include "fbfpen/tv.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "fbfpen/kernels.hpp"

namespace fbfpen {

GradField grad_forward(const Image& img) {
    GradField g;
    g.rows = img.rows;
    g.cols = img.cols;
    g.gx.resize(img.size());
    g.gy.resize(img.size());
    kernels::grad_forward(img.pix.data(), g.gx.data(), g.gy.data(), img.rows, img.cols);
    return g;
}

Vec div_adjoint(const GradField& g) {
    Vec out(g.rows * g.cols);
    kernels::div_adjoint(g.gx.data(), g.gy.data(), out.data(), g.rows, g.cols);
    return out;
}

double tv_iso(const Image& img) {
    const std::size_t M = img.rows, N = img.cols;
    auto at = [&](std::size_t i, std::size_t j) { return img.pix[i * N + j]; };
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < M; ++i)
        for (std::size_t j = 0; j + 1 < N; ++j) {
            const double dx = at(i + 1, j) - at(i, j);
            const double dy = at(i, j + 1) - at(i, j);
            s += std::sqrt(dx * dx + dy * dy);
        }
    for (std::size_t i = 0; i + 1 < M; ++i) s += std::abs(at(i + 1, N - 1) - at(i, N - 1));
    for (std::size_t j = 0; j + 1 < N; ++j) s += std::abs(at(M - 1, j + 1) - at(M - 1, j));
    return s;
}

double cross_norm(const GradField& g) {
    return kernels::cross_norm(g.gx.data(), g.gy.data(), g.gx.size());
}

GradField proj_unit_disks(const GradField& g) {
    GradField out;
    out.rows = g.rows;
    out.cols = g.cols;
    out.gx.resize(g.gx.size());
    out.gy.resize(g.gy.size());
    kernels::disk_project(g.gx.data(), g.gy.data(), out.gx.data(), out.gy.data(),
                          g.gx.size());
    return out;
}

Vec psi_grad(const Vec& x, const Mask& mask, const Vec& b) {
    if (x.size() != mask.size() || b.size() != mask.size())
        throw std::invalid_argument("psi_grad: dimension mismatch");
    Vec out(x.size());
    kernels::masked_residual(x.data(), b.data(), mask.observed.data(), out.data(),
                             x.size());
    return out;
}

double isnr(const Image& x, const Image& b, const Image& xn) {
    if (x.size() != b.size() || x.size() != xn.size())
        throw std::invalid_argument("isnr: dimension mismatch");
    const double num = kernels::sumsq_diff(x.pix.data(), b.pix.data(), x.size());
    if (num == 0.0) throw std::invalid_argument("isnr: reference equals corrupted image");
    const double den = kernels::sumsq_diff(x.pix.data(), xn.pix.data(), x.size());
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(num / den);
}

Mask make_mask(std::size_t rows, std::size_t cols, double missing_ratio,
               std::uint64_t seed) {
    if (!(missing_ratio >= 0.0 && missing_ratio < 1.0))
        throw std::invalid_argument("make_mask: missing_ratio must lie in [0, 1)");
    const std::size_t n = rows * cols;
    const auto k = static_cast<std::size_t>(
        std::llround(missing_ratio * static_cast<double>(n)));

    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    SplitMix64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(idx[i], idx[j]);
    }

    Mask m;
    m.rows = rows;
    m.cols = cols;
    m.observed.assign(n, 1);
    for (std::size_t i = 0; i < k; ++i) m.observed[idx[i]] = 0;
    return m;
}

Image apply_mask(const Image& img, const Mask& mask) {
    if (img.size() != mask.size())
        throw std::invalid_argument("apply_mask: dimension mismatch");
    Image out = img;
    for (std::size_t i = 0; i < out.pix.size(); ++i)
        if (!mask.observed[i]) out.pix[i] = 0.0;  // missing pixels are black
    return out;
}

LinearMap grad_map(std::size_t rows, std::size_t cols, bool use_power_estimate) {
    const std::size_t n = rows * cols;
    LinearMap L;
    L.in_dim = n;
    L.out_dim = 2 * n;
    L.apply = [rows, cols, n](const Vec& x) {
        if (x.size() != n) throw std::invalid_argument("grad_map: dimension mismatch");
        Vec out(2 * n);
        kernels::grad_forward(x.data(), out.data(), out.data() + n, rows, cols);
        return out;
    };
    L.adjoint_apply = [rows, cols, n](const Vec& g) {
        if (g.size() != 2 * n)
            throw std::invalid_argument("grad_map: adjoint dimension mismatch");
        Vec out(n);
        kernels::div_adjoint(g.data(), g.data() + n, out.data(), rows, cols);
        return out;
    };
    L.norm_bound = use_power_estimate ? op_norm_estimate(L) * norm_safety_factor
                                      : std::sqrt(8.0);
    return L;
}

CompositeProblem build_inpainting_problem(const Image& b, const Mask& mask,
                                          bool use_power_estimate) {
    if (b.size() != mask.size())
        throw std::invalid_argument("build_inpainting_problem: dimension mismatch");
    const std::size_t n = b.size();

    CompositeProblem c;
    c.dim = n;

    // f = indicator of the unit box: prox is the clamp, for every gamma.
    c.resolvent_A.dim = n;
    c.resolvent_A.prox = [](double, const Vec& x) { return prox_box(x, 0.0, 1.0); };

    // h == 0
    c.D = zero_op(n);

    // grad Psi(x) = P(x - b), Lipschitz constant 1 (mu = 1)
    c.B.dim = n;
    c.B.lipschitz_constant = 1.0;
    c.B.eval = [mask, bp = b.pix](const Vec& x) { return psi_grad(x, mask, bp); };

    // g_1 = cross norm of the gradient field; its conjugate prox is the
    // pixelwise unit-disk projection, independent of gamma.
    LinearMap L = grad_map(b.rows, b.cols, use_power_estimate);
    ProxOracle disk;
    disk.dim = 2 * n;
    disk.prox = [n](double, const Vec& g) {
        Vec out(2 * n);
        kernels::disk_project(g.data(), g.data() + n, out.data(), out.data() + n, n);
        return out;
    };
    c.terms.push_back(term_from_inverse_resolvent(std::move(disk), std::move(L)));
    return c;
}

Image make_phantom(std::size_t rows, std::size_t cols) {
    Image img;
    img.rows = rows;
    img.cols = cols;
    img.pix.assign(rows * cols, 0.15);
    auto block = [&](double ri0, double ri1, double rj0, double rj1, double v) {
        const auto i0 = static_cast<std::size_t>(ri0 * rows);
        const auto i1 = static_cast<std::size_t>(ri1 * rows);
        const auto j0 = static_cast<std::size_t>(rj0 * cols);
        const auto j1 = static_cast<std::size_t>(rj1 * cols);
        for (std::size_t i = i0; i < i1 && i < rows; ++i)
            for (std::size_t j = j0; j < j1 && j < cols; ++j) img.pix[i * cols + j] = v;
    };
    block(0.10, 0.45, 0.10, 0.40, 0.85);
    block(0.55, 0.90, 0.50, 0.90, 0.60);
    block(0.20, 0.35, 0.55, 0.95, 1.00);
    block(0.60, 0.80, 0.08, 0.35, 0.35);
    return img;
}

} // namespace fbfpen
