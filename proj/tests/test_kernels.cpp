#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fbfpen/core.hpp"
#include "fbfpen/kernels.hpp"

using namespace fbfpen;
namespace k = fbfpen::kernels;

namespace {

Vec random_vec(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vec v(n);
    for (auto& e : v) e = 2.0 * rng.next_double() - 1.0;
    return v;
}

// sizes straddling the parallel cutoff and the reduction chunk, plus odd
// stragglers
const std::vector<std::size_t> sizes = {1, 7, 4095, 4096, 4097, 40000, 70000};

} // namespace

TEST_CASE("parallel kernels match the serial reference bitwise") {
    for (std::size_t n : sizes) {
        const Vec x = random_vec(n, 1), y = random_vec(n, 2), z = random_vec(n, 3),
                  w = random_vec(n, 4), u = random_vec(n, 5);
        Vec a(n), b(n);

        k::clamp(x.data(), a.data(), n, -0.25, 0.5);
        k::serial::clamp(x.data(), b.data(), n, -0.25, 0.5);
        CHECK(a == b);

        k::forward_combine(x.data(), y.data(), z.data(), 0.3, 0.7, a.data(), n);
        k::serial::forward_combine(x.data(), y.data(), z.data(), 0.3, 0.7, b.data(), n);
        CHECK(a == b);

        k::correction_combine(x.data(), y.data(), z.data(), w.data(), u.data(), 0.11,
                              0.23, a.data(), n);
        k::serial::correction_combine(x.data(), y.data(), z.data(), w.data(), u.data(),
                                      0.11, 0.23, b.data(), n);
        CHECK(a == b);

        k::axpy(x.data(), y.data(), -1.7, a.data(), n);
        k::serial::axpy(x.data(), y.data(), -1.7, b.data(), n);
        CHECK(a == b);

        a = x;
        b = x;
        k::relax_toward(a.data(), y.data(), 0.4, n);
        k::serial::relax_toward(b.data(), y.data(), 0.4, n);
        CHECK(a == b);

        std::vector<unsigned char> mask(n);
        SplitMix64 rng(6);
        for (auto& m : mask) m = rng.next() & 1;
        k::masked_residual(x.data(), y.data(), mask.data(), a.data(), n);
        k::serial::masked_residual(x.data(), y.data(), mask.data(), b.data(), n);
        CHECK(a == b);

        Vec ax(n), ay(n), bx(n), by(n);
        k::disk_project(x.data(), y.data(), ax.data(), ay.data(), n);
        k::serial::disk_project(x.data(), y.data(), bx.data(), by.data(), n);
        CHECK(ax == bx);
        CHECK(ay == by);

        CHECK(k::dot(x.data(), y.data(), n) == k::serial::dot(x.data(), y.data(), n));
        CHECK(k::sumsq(x.data(), n) == k::serial::sumsq(x.data(), n));
        CHECK(k::sumsq_diff(x.data(), y.data(), n) ==
              k::serial::sumsq_diff(x.data(), y.data(), n));
        CHECK(k::cross_norm(x.data(), y.data(), n) ==
              k::serial::cross_norm(x.data(), y.data(), n));
    }
}

TEST_CASE("stencils match serial reference bitwise") {
    for (auto [rows, cols] :
         {std::pair<std::size_t, std::size_t>{1, 1}, {3, 5}, {64, 64}, {200, 331}}) {
        const std::size_t n = rows * cols;
        const Vec img = random_vec(n, 7);
        Vec gx1(n), gy1(n), gx2(n), gy2(n);
        k::grad_forward(img.data(), gx1.data(), gy1.data(), rows, cols);
        k::serial::grad_forward(img.data(), gx2.data(), gy2.data(), rows, cols);
        CHECK(gx1 == gx2);
        CHECK(gy1 == gy2);

        Vec d1(n), d2(n);
        k::div_adjoint(gx1.data(), gy1.data(), d1.data(), rows, cols);
        k::serial::div_adjoint(gx1.data(), gy1.data(), d2.data(), rows, cols);
        CHECK(d1 == d2);
    }
}

TEST_CASE("reduction is independent of chunk boundaries only through order") {
    // the chunked sum must equal a plain left-to-right partial-sum fold
    const std::size_t n = 3 * k::reduce_chunk + 17;
    const Vec x = random_vec(n, 8);
    double plain = 0.0;
    std::vector<double> parts;
    for (std::size_t c = 0; c * k::reduce_chunk < n; ++c) {
        double s = 0.0;
        for (std::size_t i = c * k::reduce_chunk; i < std::min(n, (c + 1) * k::reduce_chunk); ++i)
            s += x[i] * x[i];
        parts.push_back(s);
    }
    for (double p : parts) plain += p;
    CHECK(k::sumsq(x.data(), n) == plain);
}

TEST_CASE("all_finite flags NaN and Inf") {
    Vec x = random_vec(100, 9);
    CHECK(k::all_finite(x.data(), x.size()));
    x[57] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(k::all_finite(x.data(), x.size()));
    x[57] = std::numeric_limits<double>::infinity();
    CHECK_FALSE(k::all_finite(x.data(), x.size()));
}
