/* Step-size and penalty sequences lambda_n = c*(d*n)^(-a), beta_n = n^e,
 * and validation of the convergence conditions they must satisfy.
 * Schedules are 1-based; the solvers consume index n+1 at algorithm step n.
 */
#pragma once

#include <cstddef>
#include <limits>

namespace fbfpen {

struct PolySchedule {
    double c = 1.0;  // leading coefficient, > 0
    double a = 0.0;  // lambda exponent
    double d = 1.0;  // inner scale, > 0
    double e = 0.0;  // beta exponent
};

struct StepPair {
    double lambda;
    double beta;
};

/// lambda_n and beta_n for n >= 1.
StepPair eval_schedule(const PolySchedule& s, std::size_t n);

struct ScheduleReport {
    double limsup_estimate = 0.0;  // of lambda_n*beta_n/mu + lambda_n/eta
    bool in_l2_not_l1 = false;     // square-summable but not summable steps
    bool condition_fbf_ep = false; // limsup < 1/2
    bool condition_fbf = false;    // limsup < 1
    std::size_t horizon = 0;
};

inline constexpr double infinite_eta = std::numeric_limits<double>::infinity();

/// Checks the step/penalty sequence against the convergence conditions.
/// eta = infinite_eta encodes D == 0 (the lambda_n/eta term is dropped).
/// When e == a the product lambda_n*beta_n is constant and the analytic
/// limit c*d^(-a)/mu is reported exactly; otherwise the estimate is the
/// supremum over n in [horizon/2, horizon].
ScheduleReport validate_schedule(const PolySchedule& s, double mu, double eta,
                                 std::size_t horizon = 1000);

} // namespace fbfpen
