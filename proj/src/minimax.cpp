#include "fbfpen/minimax.hpp"

#include <algorithm>
#include <cstring>

namespace fbfpen {

Vec stack_pair(const Vec& x, const Vec& y) {
    Vec xy;
    xy.reserve(x.size() + y.size());
    xy.insert(xy.end(), x.begin(), x.end());
    xy.insert(xy.end(), y.begin(), y.end());
    return xy;
}

std::pair<Vec, Vec> split_pair(const Vec& xy, std::size_t dim_x) {
    return {Vec(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(dim_x)),
            Vec(xy.begin() + static_cast<std::ptrdiff_t>(dim_x), xy.end())};
}

PenaltyProblem build_minimax_problem(const MinimaxInstance& m) {
    if (m.K1.in_dim != m.dim_x || m.K2.in_dim != m.dim_y ||
        m.b.size() != m.K1.out_dim || m.b2.size() != m.K2.out_dim)
        throw std::invalid_argument("build_minimax_problem: dimension mismatch");

    const std::size_t dx = m.dim_x;
    const std::size_t total = m.dim_x + m.dim_y;

    PenaltyProblem p;
    p.dim = total;

    p.resolvent.dim = total;
    p.resolvent.prox = [m, dx](double, const Vec& xy) {
        auto [x, y] = split_pair(xy, dx);
        return stack_pair(m.proj_x(x), m.proj_y(y));
    };

    // D = F = (grad1 f, -grad2 f); one eval computes both blocks.
    p.D.dim = total;
    p.D.lipschitz_constant = m.grad_lipschitz;
    p.D.eval = [m, dx](const Vec& xy) {
        auto [x, y] = split_pair(xy, dx);
        Vec g1 = m.grad1(x, y);
        Vec g2 = m.grad2(x, y);
        Vec out(xy.size());
        std::memcpy(out.data(), g1.data(), g1.size() * sizeof(double));
        for (std::size_t i = 0; i < g2.size(); ++i) out[dx + i] = -g2[i];
        return out;
    };

    // B = penalty gradients of 1/2||K1 x - b||^2 and 1/2||K2 y - b'||^2
    const double kbar = std::max(m.K1.norm_bound * m.K1.norm_bound,
                                 m.K2.norm_bound * m.K2.norm_bound);
    p.B.dim = total;
    p.B.lipschitz_constant = kbar;
    p.B.eval = [m, dx](const Vec& xy) {
        auto [x, y] = split_pair(xy, dx);
        Vec r1 = m.K1.apply(x);
        for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= m.b[i];
        Vec g1 = m.K1.adjoint_apply(r1);
        Vec r2 = m.K2.apply(y);
        for (std::size_t i = 0; i < r2.size(); ++i) r2[i] -= m.b2[i];
        Vec g2 = m.K2.adjoint_apply(r2);
        Vec out(xy.size());
        std::memcpy(out.data(), g1.data(), g1.size() * sizeof(double));
        std::memcpy(out.data() + dx, g2.data(), g2.size() * sizeof(double));
        return out;
    };
    return p;
}

RunRecord alg2_run(const MinimaxInstance& m, const PolySchedule& s, const Vec& x0,
                   const Vec& y0, const RunOptions& opts) {
    return run(build_minimax_problem(m), s, stack_pair(x0, y0), opts);
}

double saddle_residual(const MinimaxInstance& m, const Vec& x, const Vec& y) {
    Vec g1 = m.grad1(x, y);
    Vec g2 = m.grad2(x, y);
    Vec xs(x.size()), ys(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = x[i] - g1[i];
    for (std::size_t i = 0; i < y.size(); ++i) ys[i] = y[i] + g2[i];
    Vec px = m.proj_x(xs);
    Vec py = m.proj_y(ys);
    Vec r1 = m.K1.apply(x);
    for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= m.b[i];
    Vec r2 = m.K2.apply(y);
    for (std::size_t i = 0; i < r2.size(); ++i) r2[i] -= m.b2[i];
    return dist(x, px) + dist(y, py) + norm(r1) + norm(r2);
}

} // namespace fbfpen
