#include <benchmark/benchmark.h>

#include "torusgmc/kernel.hpp"
#include "torusgmc/measure.hpp"
#include "torusgmc/sampler.hpp"

using namespace gmc;

namespace {

std::vector<GridKernel> make_kernels(const GridSpec& grid, int levels,
                                     Fft& fft) {
    auto phi = RadialProfile::build_phi(grid.dim(), 64);
    auto q = RadialProfile::build_q(grid.dim(), 64);
    return build_kernels(phi, q, grid, levels, fft);
}

void BM_build_kernels(benchmark::State& state) {
    GridSpec grid(1, 1 << static_cast<int>(state.range(0)));
    Fft fft(grid);
    for (auto _ : state) {
        auto k = make_kernels(grid, grid.max_level(), fft);
        benchmark::DoNotOptimize(k);
    }
}
BENCHMARK(BM_build_kernels)->Arg(10)->Arg(12);

void BM_sample_field(benchmark::State& state) {
    GridSpec grid(1, 1 << static_cast<int>(state.range(0)));
    Fft fft(grid);
    auto kernels = make_kernels(grid, 5, fft);
    std::uint32_t r = 0;
    for (auto _ : state) {
        auto f = sample_field(kernels[4], SeedPath{1, r++, 5}, fft);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_sample_field)->Arg(10)->Arg(12)->Arg(14);

void BM_cascade(benchmark::State& state) {
    GridSpec grid(1, 1 << 12);
    Fft fft(grid);
    const int levels = static_cast<int>(state.range(0));
    auto kernels = make_kernels(grid, levels, fft);
    std::uint32_t r = 0;
    for (auto _ : state) {
        auto res = run_cascade(kernels, 0.5, levels, 3, r++, {}, fft);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_cascade)->Arg(4)->Arg(9);

void BM_spectrum(benchmark::State& state) {
    GridSpec grid(2, 1 << static_cast<int>(state.range(0)));
    Fft fft(grid);
    auto kernels = make_kernels(grid, 3, fft);
    auto res = run_cascade(kernels, 0.5, 3, 3, 0, {}, fft);
    for (auto _ : state) {
        auto spec = spectrum(res.final_state, fft);
        benchmark::DoNotOptimize(spec);
    }
}
BENCHMARK(BM_spectrum)->Arg(7)->Arg(9);

}  // namespace
