// Compares the OpenMP kernels against their serial reference twins, plus
// one full extrapolated inpainting step at a realistic image size.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fbfpen/core.hpp"
#include "fbfpen/kernels.hpp"
#include "fbfpen/tv.hpp"

namespace k = fbfpen::kernels;
using fbfpen::SplitMix64;
using fbfpen::Vec;

namespace {

Vec random_vec(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vec v(n);
    for (auto& e : v) e = rng.next_double();
    return v;
}

void bm_forward_combine_omp(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Vec x = random_vec(n, 1), d = random_vec(n, 2), e = random_vec(n, 3);
    Vec out(n);
    for (auto _ : state) {
        k::forward_combine(x.data(), d.data(), e.data(), 0.3, 0.2, out.data(), n);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * n * 4 * 8);
}

void bm_forward_combine_serial(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Vec x = random_vec(n, 1), d = random_vec(n, 2), e = random_vec(n, 3);
    Vec out(n);
    for (auto _ : state) {
        k::serial::forward_combine(x.data(), d.data(), e.data(), 0.3, 0.2, out.data(), n);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * n * 4 * 8);
}

void bm_disk_project_omp(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Vec gx = random_vec(n, 4), gy = random_vec(n, 5);
    Vec ox(n), oy(n);
    for (auto _ : state) {
        k::disk_project(gx.data(), gy.data(), ox.data(), oy.data(), n);
        benchmark::DoNotOptimize(ox.data());
        benchmark::ClobberMemory();
    }
}

void bm_disk_project_serial(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Vec gx = random_vec(n, 4), gy = random_vec(n, 5);
    Vec ox(n), oy(n);
    for (auto _ : state) {
        k::serial::disk_project(gx.data(), gy.data(), ox.data(), oy.data(), n);
        benchmark::DoNotOptimize(ox.data());
        benchmark::ClobberMemory();
    }
}

void bm_grad_forward_omp(benchmark::State& state) {
    const std::size_t side = static_cast<std::size_t>(state.range(0));
    const Vec img = random_vec(side * side, 6);
    Vec gx(side * side), gy(side * side);
    for (auto _ : state) {
        k::grad_forward(img.data(), gx.data(), gy.data(), side, side);
        benchmark::DoNotOptimize(gx.data());
        benchmark::ClobberMemory();
    }
}

void bm_grad_forward_serial(benchmark::State& state) {
    const std::size_t side = static_cast<std::size_t>(state.range(0));
    const Vec img = random_vec(side * side, 6);
    Vec gx(side * side), gy(side * side);
    for (auto _ : state) {
        k::serial::grad_forward(img.data(), gx.data(), gy.data(), side, side);
        benchmark::DoNotOptimize(gx.data());
        benchmark::ClobberMemory();
    }
}

void bm_sumsq_omp(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Vec x = random_vec(n, 7);
    for (auto _ : state) {
        double s = k::sumsq(x.data(), n);
        benchmark::DoNotOptimize(s);
    }
}

void bm_sumsq_serial(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Vec x = random_vec(n, 7);
    for (auto _ : state) {
        double s = k::serial::sumsq(x.data(), n);
        benchmark::DoNotOptimize(s);
    }
}

// one extrapolated inpainting iteration at 256x256 through the full solver
void bm_inpaint_step(benchmark::State& state) {
    using namespace fbfpen;
    const std::size_t side = 256;
    Image clean = make_phantom(side, side);
    Mask mask = make_mask(side, side, 0.8, 7);
    Image corrupted = apply_mask(clean, mask);
    CompositeProblem prob = build_inpainting_problem(corrupted, mask);
    PenaltyProblem p = lift_problem(prob);
    IterState st;
    st.x = pack({corrupted.pix, {Vec(2 * side * side, 0.0)}});
    st.y_prev = st.x;
    st.b_cache = p.B.eval(st.y_prev);
    st.d_cache = p.D.eval(st.y_prev);
    double lambda = 0.9 * std::pow(2.0, -0.75), beta = 1.0;
    for (auto _ : state) {
        st = fbf_ep_step(p, std::move(st), lambda, beta);
        benchmark::DoNotOptimize(st.x.data());
    }
}

} // namespace

BENCHMARK(bm_forward_combine_omp)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_forward_combine_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_disk_project_omp)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_disk_project_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_grad_forward_omp)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(bm_grad_forward_serial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(bm_sumsq_omp)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_sumsq_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_inpaint_step);

BENCHMARK_MAIN();
