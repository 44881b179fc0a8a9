/* Brute-force reference computations used to certify solver results:
 * dense KKT solves for small affine inclusions, a Jacobi eigensolver for
 * singular values, central finite differences, the prox optimality test
 * and a grid saddle check. Everything here is hand-rolled on the standard
 * library only, sharing no kernels with the code under test.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fbfpen::oracle {

using OVec = std::vector<double>;
using OMat = std::vector<std::vector<double>>;

/// x -> matrix * x + offset
struct AffineOp {
    OMat matrix;
    OVec offset;
    OVec operator()(const OVec& x) const;
};

/// Gaussian elimination with partial pivoting; throws on a (near-)singular
/// system.
OVec dense_solve(OMat a, OVec rhs);

/// Ground truth for 0 in A(u) + D(u) + N_C(u) with C = {x : Kx = b}
/// (or C = R^n when no constraint is given), optionally intersected with a
/// box when no equality constraint is present. The result is verified by
/// substitution to 1e-10 before being returned.
OVec solve_small_inclusion(const AffineOp& A, const std::optional<AffineOp>& D,
                           const std::optional<std::pair<OMat, OVec>>& constraint,
                           const std::optional<std::array<double, 2>>& box);

/// Largest eigenvalue of a symmetric matrix by the cyclic Jacobi method.
double sym_eig_max(OMat s, int sweeps = 64);

/// Largest singular value of a rectangular matrix (Jacobi on A^T A).
double largest_singular_value(const OMat& a);

/// Central finite differences of f at x with step h.
OVec finite_diff_grad(const std::function<double(const OVec&)>& f, const OVec& x,
                      double h);

/// True iff p minimizes f(y) + (1/(2 gamma)) ||y - x||^2 against `trials`
/// random candidates in a ball around p (slack 1e-9).
bool prox_optimality_check(const std::function<double(const OVec&)>& f, const OVec& x,
                           const OVec& p, double gamma, int trials,
                           std::uint64_t seed = 1234);

/// Verifies the saddle inequality f(xs, y) <= f(xs, ys) <= f(x, ys) on a
/// uniform grid over [xlo,xhi] x [ylo,yhi] for scalar factors.
bool grid_saddle_check(const std::function<double(double, double)>& f, double xs,
                       double ys, double xlo, double xhi, double ylo, double yhi,
                       int grid = 200, double tol = 1e-9);

} // namespace fbfpen::oracle
