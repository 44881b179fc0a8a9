/* Product-space lift for inclusions with finitely many linearly composed
 * terms,
 *
 *   0 in Ax + sum_i L_i* B_i L_i x + Dx + N_C(x),
 *
 * rewritten over H x G_1 x ... x G_m with
 *
 *   A~(x,v) = Ax x B_1^{-1}v_1 x ... x B_m^{-1}v_m
 *   D~(x,v) = (sum_i L_i* v_i + Dx, -L_1 x, ..., -L_m x)
 *   B~(x,v) = (Bx, 0, ..., 0)
 *
 * so the generic penalty solver applies unchanged. The lifted D~ is
 * matrix-free and Lipschitz with constant nu + sqrt(sum ||L_i||^2).
 * Points live in one contiguous flat vector with recorded offsets.
 */
#pragma once

#include <vector>

#include "fbfpen/core.hpp"
#include "fbfpen/solver.hpp"

namespace fbfpen {

struct ProductLayout {
    std::size_t base_dim = 0;
    std::vector<std::size_t> term_dims;
    std::size_t total() const;
    std::size_t term_offset(std::size_t i) const;
    Vec primal_part(const Vec& flat) const;
    Vec term_part(const Vec& flat, std::size_t i) const;
};

/// Structured view of a product-space point.
struct LiftedPoint {
    Vec x;
    std::vector<Vec> v;
};

Vec pack(const LiftedPoint& p);
LiftedPoint unpack(const Vec& flat, const ProductLayout& layout);

/// One composed term: the linear operator L_i together with the resolvent
/// of B_i^{-1} (a ProxOracle with prox(lambda, v) = J_{lambda B_i^{-1}} v).
struct CompositeTerm {
    LinearMap op;
    ProxOracle inv_resolvent;
};

/// Term for B_i = dg_i given the prox of g_i itself; the inverse resolvent
/// is prox_{lambda g_i*} obtained through the Moreau decomposition.
CompositeTerm term_from_prox(ProxOracle g_prox, LinearMap op);

/// Term with the inverse resolvent supplied directly (for operators whose
/// J_{lambda B^{-1}} has a closed form, e.g. a projection).
CompositeTerm term_from_inverse_resolvent(ProxOracle inv_resolvent, LinearMap op);

struct CompositeProblem {
    std::size_t dim = 0;   // dim of H
    ProxOracle resolvent_A;
    LipschitzOp D;         // constant nu (zero_op for h == 0)
    LipschitzOp B;         // constant 1/mu
    std::vector<CompositeTerm> terms;
    ProductLayout layout() const;
};

/// Componentwise resolvent of the lifted A~.
LiftedPoint resolvent_product(double lambda, const ProxOracle& A,
                              const std::vector<ProxOracle>& inv_terms,
                              const LiftedPoint& pt);

/// The penalty problem the generic solver runs on. With m = 0 the result
/// behaves exactly like (A, D, B) on H.
PenaltyProblem lift_problem(const CompositeProblem& c);

/// run() on lift_problem(c); the primal trace is the x-component of the
/// flat iterates.
RunRecord alg3_run(const CompositeProblem& c, const PolySchedule& s,
                   const LiftedPoint& init, const RunOptions& opts);

/// Composite problem for  inf { f(x) + sum_i g_i(L_i x) + h(x) } over
/// argmin Psi, from the prox of f, the gradients of h and Psi, and the
/// (g_i, L_i) pairs.
CompositeProblem alg4_build(ProxOracle f_prox, LipschitzOp h_grad,
                            LipschitzOp psi_grad,
                            std::vector<std::pair<ProxOracle, LinearMap>> terms);

} // namespace fbfpen
