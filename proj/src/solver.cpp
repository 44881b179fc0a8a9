#include "fbfpen/solver.hpp"

#include <chrono>
#include <cmath>

#include "fbfpen/kernels.hpp"

namespace fbfpen {

namespace {

void check_finite(const Vec& v, std::size_t iteration, const char* what) {
    if (!kernels::all_finite(v.data(), v.size()))
        throw divergence_error(iteration,
                               std::string(what) + " became non-finite at iteration " +
                                   std::to_string(iteration));
}

} // namespace

IterState fbf_ep_step(const PenaltyProblem& p, IterState s, double lambda, double beta) {
    if (lambda <= 0 || beta <= 0)
        throw std::invalid_argument("fbf_ep_step: lambda and beta must be positive");
    const std::size_t n = p.dim;

    // y_n = J_{lambda A}[x - lambda*D(y_prev) - lambda*beta*B(y_prev)]
    Vec arg(n);
    kernels::forward_combine(s.x.data(), s.d_cache.data(), s.b_cache.data(), lambda,
                             lambda * beta, arg.data(), n);
    Vec y = p.resolvent.prox(lambda, arg);
    check_finite(y, s.n, "trial point");

    Vec by = p.B.eval(y);
    Vec dy = p.D.eval(y);

    // x_{n+1} = lambda*beta*(B(y_prev)-B(y)) + lambda*(D(y_prev)-D(y)) + y
    Vec xn(n);
    kernels::correction_combine(s.b_cache.data(), by.data(), s.d_cache.data(),
                                dy.data(), y.data(), lambda * beta, lambda, xn.data(),
                                n);
    check_finite(xn, s.n, "iterate");

    s.x = std::move(xn);
    s.y_prev = std::move(y);
    s.b_cache = std::move(by);
    s.d_cache = std::move(dy);
    ++s.n;
    return s;
}

IterState fbf_step(const PenaltyProblem& p, IterState s, double lambda, double beta) {
    if (lambda <= 0 || beta <= 0)
        throw std::invalid_argument("fbf_step: lambda and beta must be positive");
    const std::size_t n = p.dim;

    Vec bx = p.B.eval(s.x);
    Vec dx = p.D.eval(s.x);

    Vec arg(n);
    kernels::forward_combine(s.x.data(), dx.data(), bx.data(), lambda, lambda * beta,
                             arg.data(), n);
    Vec y = p.resolvent.prox(lambda, arg);
    check_finite(y, s.n, "trial point");

    Vec by = p.B.eval(y);
    Vec dy = p.D.eval(y);

    Vec xn(n);
    kernels::correction_combine(bx.data(), by.data(), dx.data(), dy.data(), y.data(),
                                lambda * beta, lambda, xn.data(), n);
    check_finite(xn, s.n, "iterate");

    s.x = std::move(xn);
    s.y_prev = std::move(y);
    ++s.n;
    return s;
}

void ErgodicAverage::update(const Vec& x, double lambda) {
    if (lambda <= 0)
        throw std::invalid_argument("ErgodicAverage::update: lambda must be positive");
    if (z.size() != x.size()) z.assign(x.size(), 0.0);
    tau += lambda;
    kernels::relax_toward(z.data(), x.data(), lambda / tau, x.size());
}

RunRecord run(const PenaltyProblem& p, const PolySchedule& s, const Vec& x0,
              const RunOptions& opts, std::optional<Vec> y_init) {
    if (opts.max_iters < 1) throw std::invalid_argument("run: max_iters must be >= 1");
    if (x0.size() != p.dim) throw std::invalid_argument("run: x0 dimension mismatch");
    if (y_init && y_init->size() != p.dim)
        throw std::invalid_argument("run: y_init dimension mismatch");

    auto b_count = std::make_shared<CallCounter>();
    auto d_count = std::make_shared<CallCounter>();
    auto r_count = std::make_shared<CallCounter>();
    PenaltyProblem counted = p;
    counted.B = wrap_counted(p.B, b_count);
    counted.D = wrap_counted(p.D, d_count);
    counted.resolvent = wrap_counted(p.resolvent, r_count);

    IterState st;
    st.x = x0;
    st.y_prev = y_init ? *y_init : x0;
    if (opts.algorithm == Algorithm::fbf_ep) {
        st.b_cache = counted.B.eval(st.y_prev);
        st.d_cache = counted.D.eval(st.y_prev);
    }

    RunRecord rec;
    rec.rows.reserve(opts.max_iters);
    ErgodicAverage avg(p.dim);
    avg.update(st.x, eval_schedule(s, 1).lambda);  // z_0 = x_0
    if (opts.record_history) {
        rec.xs.push_back(st.x);
        rec.ys.push_back(st.y_prev);  // y_{-1}
        rec.zs.push_back(avg.z);
    }

    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t n = 0; n < opts.max_iters; ++n) {
        const StepPair sp = eval_schedule(s, n + 1);
        Vec x_old = st.x;
        Vec y_old = st.y_prev;
        try {
            st = (opts.algorithm == Algorithm::fbf_ep)
                     ? fbf_ep_step(counted, std::move(st), sp.lambda, sp.beta)
                     : fbf_step(counted, std::move(st), sp.lambda, sp.beta);
        } catch (const divergence_error& e) {
            throw run_divergence(e.iteration(), e.what(), std::move(rec));
        }

        // weight the new iterate by its own schedule value, matching
        // z_n = (1/tau_n) sum_{k<=n} lambda_k x_k
        avg.update(st.x, eval_schedule(s, n + 2).lambda);

        RunRow row;
        row.iter = n + 1;
        row.lambda = sp.lambda;
        row.beta = sp.beta;
        row.step_norm_x = dist(st.x, x_old);
        row.step_norm_y = dist(st.y_prev, y_old);
        if (opts.reference) row.dist_ref = dist(st.x, *opts.reference);
        row.b_calls = b_count->count();
        row.d_calls = d_count->count();
        row.resolvent_calls = r_count->count();
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (opts.row_hook) opts.row_hook(n + 1, st.x, avg.z, row);
        rec.rows.push_back(row);

        if (opts.record_history) {
            rec.xs.push_back(st.x);
            rec.ys.push_back(st.y_prev);  // y_n
            rec.zs.push_back(avg.z);
        }

        const double xnorm = norm(st.x);
        if (!std::isfinite(xnorm) || xnorm > opts.divergence_limit)
            throw run_divergence(n, "iterate norm exceeded divergence limit at iteration " +
                                        std::to_string(n),
                                 std::move(rec));

        if (opts.tol > 0 &&
            row.step_norm_x <= opts.tol * std::max(1.0, norm(x_old))) {
            rec.stopped_by_tol = true;
            break;
        }
    }

    rec.final_x = st.x;
    rec.final_z = avg.z;
    rec.final_tau = avg.tau;
    return rec;
}

LyapunovReport lyapunov_check(const RunRecord& trace, const Vec& u, double mu,
                              double eta, double tol) {
    if (trace.xs.empty() || trace.ys.empty())
        throw std::invalid_argument("lyapunov_check: trace has no recorded history");
    if (trace.xs.size() != trace.rows.size() + 1 ||
        trace.ys.size() != trace.rows.size() + 1)
        throw std::invalid_argument("lyapunov_check: history is inconsistent");

    LyapunovReport rep;
    const std::size_t steps = trace.rows.size();
    auto big_m = [&](std::size_t n) {
        const RunRow& r = trace.rows[n];
        double m = r.lambda * r.beta / mu;
        if (std::isfinite(eta)) m += r.lambda / eta;
        return m;
    };
    // xs[k] = x_k, ys[k] = y_{k-1}
    auto d2 = [](const Vec& a, const Vec& b) {
        const double d = dist(a, b);
        return d * d;
    };
    for (std::size_t n = 0; n < steps; ++n) {
        const double mn = big_m(n);
        if (mn > 0.5) continue;
        const double lhs = d2(trace.xs[n + 1], u) - d2(trace.xs[n], u) +
                           (0.5 - mn * mn) * d2(trace.ys[n], trace.ys[n + 1]);
        double rhs;
        if (n == 0) {
            rhs = d2(trace.xs[0], trace.ys[0]);  // ||x_0 - y_{-1}||^2
        } else {
            const double mp = big_m(n - 1);
            rhs = mp * mp * d2(trace.ys[n - 1], trace.ys[n]);
        }
        ++rep.checked;
        const double slack = lhs - rhs;
        if (slack > rep.worst_slack) rep.worst_slack = slack;
        if (slack > tol) {
            ++rep.violations;
            if (!rep.first_violation) rep.first_violation = n;
        }
    }
    return rep;
}

} // namespace fbfpen
