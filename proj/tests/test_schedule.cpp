#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fbfpen/schedule.hpp"

using namespace fbfpen;

TEST_CASE("eval_schedule") {
    PolySchedule paper{0.9, 0.75, 1.0, 0.75};
    auto [l1, b1] = eval_schedule(paper, 1);
    CHECK(l1 == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(b1 == doctest::Approx(1.0).epsilon(1e-15));

    PolySchedule halved{0.9, 0.75, 2.0, 0.75};
    auto [l2, b2] = eval_schedule(halved, 1);
    CHECK(l2 == doctest::Approx(0.9 * std::pow(2.0, -0.75)).epsilon(1e-15));
    CHECK(l2 == doctest::Approx(0.5351432017512244).epsilon(1e-12));
    CHECK(b2 == 1.0);

    PolySchedule constant{1.0, 0.0, 1.0, 0.0};
    for (std::size_t n : {1u, 5u, 1000u}) {
        auto [l, b] = eval_schedule(constant, n);
        CHECK(l == 1.0);
        CHECK(b == 1.0);
    }

    CHECK_THROWS_AS(eval_schedule(paper, 0), std::invalid_argument);
}

TEST_CASE("validate_schedule: paper extrapolated schedule fails the strict bound") {
    PolySchedule s{0.9, 0.75, 2.0, 0.75};
    ScheduleReport rep = validate_schedule(s, 1.0, infinite_eta);
    CHECK(rep.limsup_estimate == doctest::Approx(0.9 * std::pow(2.0, -0.75)).epsilon(1e-13));
    CHECK(std::abs(rep.limsup_estimate - 0.5351432017512244) <= 1e-12);
    CHECK_FALSE(rep.condition_fbf_ep);
    CHECK(rep.condition_fbf);
    CHECK(rep.in_l2_not_l1);
}

TEST_CASE("validate_schedule: tame constant keeps the extrapolated condition") {
    PolySchedule s{0.4, 0.75, 1.0, 0.75};
    ScheduleReport rep = validate_schedule(s, 1.0, infinite_eta);
    CHECK(rep.limsup_estimate == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(rep.condition_fbf_ep);
    CHECK(rep.condition_fbf);
}

TEST_CASE("validate_schedule: summability rule") {
    CHECK_FALSE(validate_schedule({1.0, 0.4, 1.0, 0.4}, 1.0, infinite_eta).in_l2_not_l1);
    CHECK(validate_schedule({1.0, 0.75, 1.0, 0.75}, 1.0, infinite_eta).in_l2_not_l1);
    CHECK(validate_schedule({1.0, 1.0, 1.0, 1.0}, 1.0, infinite_eta).in_l2_not_l1);
    CHECK_FALSE(validate_schedule({1.0, 1.2, 1.0, 1.2}, 1.0, infinite_eta).in_l2_not_l1);
    CHECK_FALSE(validate_schedule({1.0, 0.5, 1.0, 0.5}, 1.0, infinite_eta).in_l2_not_l1);
}

TEST_CASE("validate_schedule: horizon independence for matched exponents") {
    PolySchedule s{0.9, 0.75, 2.0, 0.75};
    const double at100 = validate_schedule(s, 1.0, infinite_eta, 100).limsup_estimate;
    const double at10k = validate_schedule(s, 1.0, infinite_eta, 10000).limsup_estimate;
    CHECK(std::abs(at100 - at10k) <= 1e-12);
}

TEST_CASE("validate_schedule: purity and implications") {
    PolySchedule s{0.3, 0.6, 1.5, 0.6};
    ScheduleReport a = validate_schedule(s, 2.0, 4.0);
    ScheduleReport b = validate_schedule(s, 2.0, 4.0);
    CHECK(a.limsup_estimate == b.limsup_estimate);
    CHECK(a.in_l2_not_l1 == b.in_l2_not_l1);
    CHECK(a.condition_fbf_ep == b.condition_fbf_ep);
    CHECK(a.condition_fbf == b.condition_fbf);
    if (a.condition_fbf_ep) CHECK(a.condition_fbf);

    // growing-product schedule: windowed sup picks up the growth
    PolySchedule grow{0.1, 0.75, 1.0, 0.9};
    ScheduleReport g = validate_schedule(grow, 1.0, infinite_eta, 1000);
    CHECK(g.limsup_estimate == doctest::Approx(0.1 * std::pow(1000.0, 0.15)).epsilon(1e-12));

    CHECK_THROWS_AS(validate_schedule(s, 0.0, infinite_eta), std::invalid_argument);
    CHECK_THROWS_AS(validate_schedule(s, 1.0, infinite_eta, 50), std::invalid_argument);
}
