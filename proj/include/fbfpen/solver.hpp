/* Penalty-scheme splitting solvers for 0 in Ax + Dx + N_C(x) with
 * C = zer B:
 *
 *   fbf_ep_step   y_n     = J_{l_n A}[x_n - l_n D(y_{n-1}) - l_n b_n B(y_{n-1})]
 *                 x_{n+1} = l_n b_n (B(y_{n-1}) - B(y_n))
 *                           + l_n (D(y_{n-1}) - D(y_n)) + y_n
 *
 * reusing the cached evaluations at y_{n-1}, so each step costs one B, one
 * D and one resolvent call; and the classic two-call variant
 *
 *   fbf_step      y_n     = J_{l_n A}[x_n - l_n D(x_n) - l_n b_n B(x_n)]
 *                 x_{n+1} = l_n b_n (B(x_n) - B(y_n))
 *                           + l_n (D(x_n) - D(y_n)) + y_n
 *
 * run() drives either step under a PolySchedule, maintains the weighted
 * ergodic average z_n = (1/tau_n) sum l_k x_k, and records a per-iteration
 * trace. lyapunov_check() replays a recorded trace against the
 * per-iteration decrease inequality that underpins convergence.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fbfpen/core.hpp"
#include "fbfpen/schedule.hpp"

namespace fbfpen {

struct PenaltyProblem {
    std::size_t dim = 0;
    ProxOracle resolvent;  // prox(lambda, v) = J_{lambda A}(v)
    LipschitzOp D;         // constant 1/eta; zero_op(dim) encodes eta = inf
    LipschitzOp B;         // constant 1/mu
    double mu() const {
        return B.lipschitz_constant > 0 ? 1.0 / B.lipschitz_constant : infinite_eta;
    }
    double eta() const {
        return D.lipschitz_constant > 0 ? 1.0 / D.lipschitz_constant : infinite_eta;
    }
};

/// State between steps; b_cache/d_cache hold B(y_prev), D(y_prev) so the
/// extrapolated step never re-evaluates them.
struct IterState {
    Vec x;
    Vec y_prev;
    Vec b_cache;
    Vec d_cache;
    std::size_t n = 0;
};

IterState fbf_ep_step(const PenaltyProblem& p, IterState s, double lambda, double beta);
IterState fbf_step(const PenaltyProblem& p, IterState s, double lambda, double beta);

/// Running weighted mean z = (1/tau) sum lambda_k x_k, updated as
/// z += (lambda/tau')(x - z).
struct ErgodicAverage {
    Vec z;
    double tau = 0.0;
    explicit ErgodicAverage(std::size_t dim = 0) : z(dim, 0.0) {}
    void update(const Vec& x, double lambda);
};

enum class Algorithm { fbf_ep, fbf };

struct RunRow {
    std::size_t iter = 0;  // 1-based
    double lambda = 0.0;
    double beta = 0.0;
    double step_norm_x = 0.0;  // ||x_{n+1} - x_n||
    double step_norm_y = 0.0;  // ||y_n - y_{n-1}||
    double dist_ref = std::numeric_limits<double>::quiet_NaN();
    double isnr_avg = std::numeric_limits<double>::quiet_NaN();
    double isnr_nonavg = std::numeric_limits<double>::quiet_NaN();
    std::int64_t b_calls = 0;  // cumulative
    std::int64_t d_calls = 0;
    std::int64_t resolvent_calls = 0;
    double wall_ms = 0.0;  // cumulative, monotonic clock
};

struct RunRecord {
    std::vector<RunRow> rows;
    Vec final_x;
    Vec final_z;
    double final_tau = 0.0;
    bool stopped_by_tol = false;
    // Populated only when RunOptions::record_history is set.
    std::vector<Vec> xs;  // x_0 .. x_N
    std::vector<Vec> ys;  // y_{-1} .. y_{N-1}
    std::vector<Vec> zs;  // z_0 .. z_N
};

struct RunOptions {
    std::size_t max_iters = 0;
    Algorithm algorithm = Algorithm::fbf_ep;
    double tol = 0.0;  // 0 disables the relative-change stop
    bool record_history = false;
    double divergence_limit = 1e12;
    std::optional<Vec> reference;  // fills dist_ref when set
    // Optional per-row hook, e.g. for ISNR columns; receives the new
    // iterate and the current ergodic average.
    std::function<void(std::size_t iter, const Vec& x, const Vec& z, RunRow& row)>
        row_hook;
};

/// Runs Algorithm::fbf_ep or Algorithm::fbf from x0 (y_init defaults to
/// x0). Throws divergence_error on blow-up; the partial trace is carried
/// inside the exception via last_partial_record().
RunRecord run(const PenaltyProblem& p, const PolySchedule& s, const Vec& x0,
              const RunOptions& opts, std::optional<Vec> y_init = std::nullopt);

/// Divergence error that additionally carries the partial trace.
class run_divergence : public divergence_error {
public:
    run_divergence(std::size_t iteration, const std::string& what, RunRecord partial)
        : divergence_error(iteration, what), partial_(std::move(partial)) {}
    const RunRecord& partial() const { return partial_; }

private:
    RunRecord partial_;
};

struct LyapunovReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::optional<std::size_t> first_violation;
    double worst_slack = 0.0;  // most positive LHS - RHS seen
};

/// Replays the inequality
///   ||x_{n+1}-u||^2 - ||x_n-u||^2 + (1/2 - M_n^2)||y_{n-1}-y_n||^2
///     <= M_{n-1}^2 ||y_{n-2}-y_{n-1}||^2 + tol
/// with M_n = lambda_n beta_n / mu + lambda_n / eta, for every recorded n
/// with M_n <= 1/2. u must satisfy 0 in A(u) + D(u) with B(u) = 0, which
/// makes the remaining terms of the general inequality vanish. At n = 0
/// the right-hand term is ||x_0 - y_{-1}||^2 (zero under the default
/// initialization). Requires a trace recorded with record_history.
LyapunovReport lyapunov_check(const RunRecord& trace, const Vec& u, double mu,
                              double eta, double tol = 1e-9);

} // namespace fbfpen
