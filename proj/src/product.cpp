#include "fbfpen/product.hpp"

#include <cmath>
#include <cstring>

namespace fbfpen {

std::size_t ProductLayout::total() const {
    std::size_t t = base_dim;
    for (std::size_t d : term_dims) t += d;
    return t;
}

std::size_t ProductLayout::term_offset(std::size_t i) const {
    std::size_t off = base_dim;
    for (std::size_t j = 0; j < i; ++j) off += term_dims[j];
    return off;
}

Vec ProductLayout::primal_part(const Vec& flat) const {
    return Vec(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(base_dim));
}

Vec ProductLayout::term_part(const Vec& flat, std::size_t i) const {
    const auto off = static_cast<std::ptrdiff_t>(term_offset(i));
    return Vec(flat.begin() + off,
               flat.begin() + off + static_cast<std::ptrdiff_t>(term_dims[i]));
}

Vec pack(const LiftedPoint& p) {
    Vec flat;
    std::size_t total = p.x.size();
    for (const Vec& v : p.v) total += v.size();
    flat.reserve(total);
    flat.insert(flat.end(), p.x.begin(), p.x.end());
    for (const Vec& v : p.v) flat.insert(flat.end(), v.begin(), v.end());
    return flat;
}

LiftedPoint unpack(const Vec& flat, const ProductLayout& layout) {
    if (flat.size() != layout.total())
        throw std::invalid_argument("unpack: flat vector does not match layout");
    LiftedPoint p;
    p.x = layout.primal_part(flat);
    p.v.reserve(layout.term_dims.size());
    for (std::size_t i = 0; i < layout.term_dims.size(); ++i)
        p.v.push_back(layout.term_part(flat, i));
    return p;
}

CompositeTerm term_from_prox(ProxOracle g_prox, LinearMap op) {
    CompositeTerm t;
    t.op = std::move(op);
    t.inv_resolvent.dim = t.op.out_dim;
    t.inv_resolvent.prox = [g = std::move(g_prox)](double lambda, const Vec& v) {
        return moreau_conjugate_prox(g, lambda, v);
    };
    return t;
}

CompositeTerm term_from_inverse_resolvent(ProxOracle inv_resolvent, LinearMap op) {
    return {std::move(op), std::move(inv_resolvent)};
}

ProductLayout CompositeProblem::layout() const {
    ProductLayout l;
    l.base_dim = dim;
    l.term_dims.reserve(terms.size());
    for (const CompositeTerm& t : terms) l.term_dims.push_back(t.op.out_dim);
    return l;
}

LiftedPoint resolvent_product(double lambda, const ProxOracle& A,
                              const std::vector<ProxOracle>& inv_terms,
                              const LiftedPoint& pt) {
    if (lambda <= 0)
        throw std::invalid_argument("resolvent_product: lambda must be positive");
    if (inv_terms.size() != pt.v.size())
        throw std::invalid_argument("resolvent_product: component count mismatch");
    LiftedPoint out;
    out.x = A.prox(lambda, pt.x);
    out.v.reserve(pt.v.size());
    for (std::size_t i = 0; i < pt.v.size(); ++i)
        out.v.push_back(inv_terms[i].prox(lambda, pt.v[i]));
    return out;
}

PenaltyProblem lift_problem(const CompositeProblem& c) {
    const ProductLayout layout = c.layout();
    for (const CompositeTerm& t : c.terms) {
        if (t.op.in_dim != c.dim)
            throw std::invalid_argument("lift_problem: L_i input dimension mismatch");
        if (t.op.norm_bound <= 0)
            throw std::invalid_argument("lift_problem: L_i must be nonzero with a norm bound");
    }
    if (c.D.dim != c.dim || c.B.dim != c.dim)
        throw std::invalid_argument("lift_problem: operator dimension mismatch");

    const std::size_t total = layout.total();
    const std::size_t m = c.terms.size();

    PenaltyProblem p;
    p.dim = total;

    // A~ resolvent: componentwise.
    p.resolvent.dim = total;
    p.resolvent.prox = [c, layout, total](double lambda, const Vec& flat) {
        if (flat.size() != total)
            throw std::invalid_argument("lifted resolvent: dimension mismatch");
        Vec out(total);
        Vec xpart = layout.primal_part(flat);
        Vec xres = c.resolvent_A.prox(lambda, xpart);
        std::memcpy(out.data(), xres.data(), xres.size() * sizeof(double));
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            Vec vi = layout.term_part(flat, i);
            Vec qi = c.terms[i].inv_resolvent.prox(lambda, vi);
            std::memcpy(out.data() + layout.term_offset(i), qi.data(),
                        qi.size() * sizeof(double));
        }
        return out;
    };

    // D~(x,v) = (Dx + sum_i L_i* v_i, -L_1 x, ..., -L_m x)
    double sq = 0.0;
    for (const CompositeTerm& t : c.terms) sq += t.op.norm_bound * t.op.norm_bound;
    p.D.dim = total;
    p.D.lipschitz_constant = c.D.lipschitz_constant + std::sqrt(sq);
    p.D.eval = [c, layout, total](const Vec& flat) {
        if (flat.size() != total)
            throw std::invalid_argument("lifted D: dimension mismatch");
        Vec out(total);
        Vec xpart = layout.primal_part(flat);
        Vec head = c.D.eval(xpart);
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            Vec vi = layout.term_part(flat, i);
            Vec li = c.terms[i].op.adjoint_apply(vi);
            for (std::size_t k = 0; k < head.size(); ++k) head[k] += li[k];
        }
        std::memcpy(out.data(), head.data(), head.size() * sizeof(double));
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            Vec lx = c.terms[i].op.apply(xpart);
            double* dst = out.data() + layout.term_offset(i);
            for (std::size_t k = 0; k < lx.size(); ++k) dst[k] = -lx[k];
        }
        return out;
    };

    // B~(x,v) = (Bx, 0, ..., 0)
    p.B.dim = total;
    p.B.lipschitz_constant = c.B.lipschitz_constant;
    if (m == 0) {
        // exact reduction: identical oracles, identical arithmetic
        p.resolvent = c.resolvent_A;
        p.D = c.D;
        p.B = c.B;
        return p;
    }
    p.B.eval = [c, layout, total](const Vec& flat) {
        Vec out(total, 0.0);
        Vec xpart = layout.primal_part(flat);
        Vec bx = c.B.eval(xpart);
        std::memcpy(out.data(), bx.data(), bx.size() * sizeof(double));
        return out;
    };
    return p;
}

RunRecord alg3_run(const CompositeProblem& c, const PolySchedule& s,
                   const LiftedPoint& init, const RunOptions& opts) {
    return run(lift_problem(c), s, pack(init), opts);
}

CompositeProblem alg4_build(ProxOracle f_prox, LipschitzOp h_grad,
                            LipschitzOp psi_grad,
                            std::vector<std::pair<ProxOracle, LinearMap>> terms) {
    CompositeProblem c;
    c.dim = f_prox.dim;
    c.resolvent_A = std::move(f_prox);
    c.D = std::move(h_grad);
    c.B = std::move(psi_grad);
    c.terms.reserve(terms.size());
    for (auto& [g, L] : terms)
        c.terms.push_back(term_from_prox(std::move(g), std::move(L)));
    return c;
}

} // namespace fbfpen
