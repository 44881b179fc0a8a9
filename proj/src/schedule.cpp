#include "fbfpen/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace fbfpen {

StepPair eval_schedule(const PolySchedule& s, std::size_t n) {
    if (n == 0) throw std::invalid_argument("eval_schedule: schedules are 1-based");
    if (s.c <= 0 || s.d <= 0)
        throw std::invalid_argument("eval_schedule: c and d must be positive");
    const double nn = static_cast<double>(n);
    const double lambda = s.c * std::pow(s.d * nn, -s.a);
    const double beta = std::pow(nn, s.e);
    if (!std::isfinite(lambda) || !std::isfinite(beta) || lambda <= 0 || beta <= 0)
        throw std::invalid_argument("eval_schedule: non-finite schedule value");
    return {lambda, beta};
}

ScheduleReport validate_schedule(const PolySchedule& s, double mu, double eta,
                                 std::size_t horizon) {
    if (mu <= 0) throw std::invalid_argument("validate_schedule: mu must be positive");
    if (eta <= 0) throw std::invalid_argument("validate_schedule: eta must be positive");
    if (horizon < 100) throw std::invalid_argument("validate_schedule: horizon < 100");

    ScheduleReport rep;
    rep.horizon = horizon;

    const bool eta_finite = std::isfinite(eta);
    if (s.e == s.a) {
        // lambda_n*beta_n = c*d^(-a) for every n; the eta term vanishes in
        // the limit unless a == 0.
        double limsup = s.c * std::pow(s.d, -s.a) / mu;
        if (eta_finite && s.a == 0.0) limsup += s.c / eta;
        rep.limsup_estimate = limsup;
    } else {
        const double cda = s.c * std::pow(s.d, -s.a);
        double sup = 0.0;
        for (std::size_t n = horizon / 2; n <= horizon; ++n) {
            const double nn = static_cast<double>(n);
            double m = cda * std::pow(nn, s.e - s.a) / mu;
            if (eta_finite) m += s.c * std::pow(s.d * nn, -s.a) / eta;
            if (m > sup) sup = m;
        }
        rep.limsup_estimate = sup;
    }

    // Membership in l2 \ l1 is decided by the exponent: sum n^(-2a) < inf
    // iff a > 1/2, and sum n^(-a) = inf iff a <= 1.
    rep.in_l2_not_l1 = (s.a > 0.5 && s.a <= 1.0);
    rep.condition_fbf_ep = rep.limsup_estimate < 0.5;
    rep.condition_fbf = rep.limsup_estimate < 1.0;
    return rep;
}

} // namespace fbfpen
