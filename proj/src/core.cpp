#include "fbfpen/core.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fbfpen/kernels.hpp"

namespace fbfpen {

double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    return kernels::dot(x.data(), y.data(), x.size());
}

double norm(const Vec& x) { return std::sqrt(kernels::sumsq(x.data(), x.size())); }

double dist(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dist: size mismatch");
    return std::sqrt(kernels::sumsq_diff(x.data(), y.data(), x.size()));
}

LipschitzOp wrap_counted(const LipschitzOp& op, CounterPtr counter) {
    LipschitzOp out = op;
    out.eval = [inner = op.eval, counter](const Vec& x) {
        counter->bump();
        return inner(x);
    };
    return out;
}

ProxOracle wrap_counted(const ProxOracle& op, CounterPtr counter) {
    ProxOracle out = op;
    out.prox = [inner = op.prox, counter](double gamma, const Vec& x) {
        counter->bump();
        return inner(gamma, x);
    };
    return out;
}

LipschitzOp zero_op(std::size_t dim) {
    return {dim, 0.0, [dim](const Vec&) { return Vec(dim, 0.0); }};
}

LinearMap identity_map(std::size_t dim) {
    auto id = [](const Vec& x) { return x; };
    return {dim, dim, 1.0, id, id};
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<Vec>& rows) {
    const auto m = static_cast<Eigen::Index>(rows.size());
    const auto n = static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size());
    Eigen::MatrixXd a(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != n)
            throw std::invalid_argument("matrix_map: ragged rows");
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[i][j];
    }
    return a;
}

Vec from_eigen(const Eigen::VectorXd& v) {
    return Vec(v.data(), v.data() + v.size());
}

Eigen::VectorXd to_eigen_vec(const Vec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = v[i];
    return out;
}

} // namespace

LinearMap matrix_map(std::vector<Vec> rows) {
    auto a = std::make_shared<Eigen::MatrixXd>(to_eigen(rows));
    LinearMap map;
    map.in_dim = static_cast<std::size_t>(a->cols());
    map.out_dim = static_cast<std::size_t>(a->rows());
    map.apply = [a](const Vec& x) {
        if (static_cast<Eigen::Index>(x.size()) != a->cols())
            throw std::invalid_argument("matrix_map: apply dimension mismatch");
        return from_eigen(*a * to_eigen_vec(x));
    };
    map.adjoint_apply = [a](const Vec& y) {
        if (static_cast<Eigen::Index>(y.size()) != a->rows())
            throw std::invalid_argument("matrix_map: adjoint dimension mismatch");
        return from_eigen(a->transpose() * to_eigen_vec(y));
    };
    map.norm_bound = op_norm_estimate(map) * norm_safety_factor;
    return map;
}

double op_norm_estimate(const LinearMap& map, int max_iters, double tol) {
    if (max_iters < 1) throw std::invalid_argument("op_norm_estimate: max_iters < 1");
    if (tol <= 0) throw std::invalid_argument("op_norm_estimate: tol <= 0");
    if (map.in_dim == 0 || map.out_dim == 0)
        throw std::invalid_argument("op_norm_estimate: empty map");

    // power iteration on map* . map with a fixed pseudo-random start
    SplitMix64 rng(0x5eedc0de);
    Vec v(map.in_dim);
    for (auto& e : v) e = rng.next_double() - 0.5;
    double vn = norm(v);
    if (vn == 0.0) v[0] = 1.0, vn = 1.0;
    for (auto& e : v) e /= vn;

    double sigma = 0.0;
    for (int k = 0; k < max_iters; ++k) {
        Vec av = map.apply(v);
        if (av.size() != map.out_dim)
            throw std::invalid_argument("op_norm_estimate: apply returned wrong size");
        Vec w = map.adjoint_apply(av);
        if (w.size() != map.in_dim)
            throw std::invalid_argument("op_norm_estimate: adjoint returned wrong size");
        const double lambda = dot(v, w);  // Rayleigh quotient of map*map
        const double wn = norm(w);
        if (wn == 0.0) return 0.0;  // v in the kernel of map*map
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / wn;
        const double next = std::sqrt(std::max(0.0, lambda));
        if (k > 0 && std::abs(next - sigma) <= tol * std::max(1.0, next)) {
            sigma = next;
            break;
        }
        sigma = next;
    }
    return sigma;
}

Vec moreau_conjugate_prox(const ProxOracle& g_prox, double gamma, const Vec& x) {
    if (gamma <= 0) throw std::invalid_argument("moreau_conjugate_prox: gamma <= 0");
    Vec scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] / gamma;
    Vec p = g_prox.prox(1.0 / gamma, scaled);
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - gamma * p[i];
    return out;
}

Vec prox_box(const Vec& x, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("prox_box: lo > hi");
    Vec out(x.size());
    kernels::clamp(x.data(), out.data(), x.size(), lo, hi);
    return out;
}

Vec proj_affine(const LinearMap& K, const Vec& b, const Vec& x) {
    if (b.size() != K.out_dim || x.size() != K.in_dim)
        throw std::invalid_argument("proj_affine: dimension mismatch");

    // assemble K from its action; small instances only
    Eigen::MatrixXd Km(static_cast<Eigen::Index>(K.out_dim),
                       static_cast<Eigen::Index>(K.in_dim));
    Vec unit(K.in_dim, 0.0);
    for (std::size_t j = 0; j < K.in_dim; ++j) {
        unit[j] = 1.0;
        Vec col = K.apply(unit);
        unit[j] = 0.0;
        for (std::size_t i = 0; i < K.out_dim; ++i)
            Km(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }

    Eigen::VectorXd xe = to_eigen_vec(x);
    Eigen::VectorXd be = to_eigen_vec(b);
    Eigen::VectorXd r = Km * xe - be;
    Eigen::MatrixXd gram = Km * Km.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    Eigen::VectorXd mu = ldlt.solve(r);
    Eigen::VectorXd z = xe - Km.transpose() * mu;

    const double resid = (Km * z - be).norm();
    if (resid > 1e-8 * (1.0 + be.norm()))
        throw std::invalid_argument("proj_affine: system Kz = b is inconsistent");
    return from_eigen(z);
}

} // namespace fbfpen
