/* Constrained convex-concave saddle-point problems
 *
 *   min_{x in X, K1 x = b}  max_{y in Y, K2 y = b'}  f(x, y)
 *
 * solved by stacking (x, y) and feeding the penalty solver with
 *   A  = (N_X, N_Y)            resolvent (proj_X, proj_Y)
 *   D  = F = (grad1 f, -grad2 f)
 *   B  = (K1*(K1 x - b), K2*(K2 y - b'))   zer B = feasible product set
 * where B is Lipschitz with constant Kbar = max(||K1||^2, ||K2||^2).
 */
#pragma once

#include "fbfpen/core.hpp"
#include "fbfpen/solver.hpp"

namespace fbfpen {

struct MinimaxInstance {
    std::size_t dim_x = 0;
    std::size_t dim_y = 0;
    // gradients of f with respect to the first/second block; jointly
    // eta^{-1}-Lipschitz
    std::function<Vec(const Vec&, const Vec&)> grad1;
    std::function<Vec(const Vec&, const Vec&)> grad2;
    double grad_lipschitz = 0.0;  // 1/eta; 0 encodes a constant f
    std::function<Vec(const Vec&)> proj_x;
    std::function<Vec(const Vec&)> proj_y;
    LinearMap K1;
    Vec b;
    LinearMap K2;
    Vec b2;
};

/// Stacks (x, y) into the penalty-problem form; B's Lipschitz constant is
/// max(||K1||^2, ||K2||^2) from the norm bounds.
PenaltyProblem build_minimax_problem(const MinimaxInstance& m);

Vec stack_pair(const Vec& x, const Vec& y);
std::pair<Vec, Vec> split_pair(const Vec& xy, std::size_t dim_x);

/// Extrapolated penalty run on the stacked problem; one (grad1, grad2)
/// evaluation and one penalty-gradient evaluation per iteration.
RunRecord alg2_run(const MinimaxInstance& m, const PolySchedule& s, const Vec& x0,
                   const Vec& y0, const RunOptions& opts);

/// First-order residual: ||x - proj_X(x - grad1)|| + ||y - proj_Y(y + grad2)||
/// + ||K1 x - b|| + ||K2 y - b'||. Zero exactly at saddle points.
double saddle_residual(const MinimaxInstance& m, const Vec& x, const Vec& y);

} // namespace fbfpen
