#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "torusgmc/errors.hpp"
#include "torusgmc/kernel.hpp"
#include "torusgmc/sampler.hpp"

using namespace gmc;

namespace {

std::vector<GridKernel> small_kernels(const GridSpec& grid, int levels,
                                      Fft& fft) {
    auto phi = RadialProfile::build_phi(grid.dim(), 64);
    auto q = RadialProfile::build_q(grid.dim(), 64);
    return build_kernels(phi, q, grid, levels, fft);
}

}  // namespace

TEST_CASE("sampling is a pure function of the seed path") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 3, fft);
    SeedPath path{42, 7, 2};
    auto a = sample_field(kernels[1], path, fft);
    auto b = sample_field(kernels[1], path, fft);
    CHECK(a.values == b.values);  // bit-identical
    SeedPath other{42, 8, 2};
    auto c = sample_field(kernels[1], other, fft);
    CHECK(a.values != c.values);
}

TEST_CASE("zero spectrum gives the zero field") {
    GridSpec grid(1, 128);
    Fft fft(grid);
    GridKernel k{.level = 1,
                 .grid = grid,
                 .real_samples = std::vector<double>(grid.size(), 0.0),
                 .eigenvalues = std::vector<double>(grid.size(), 0.0),
                 .sigma2 = 0.0,
                 .epsilon = 0.5,
                 .support_radius = 1.0,
                 .clamped_fraction = 0.0};
    auto f = sample_field(k, SeedPath{1, 0, 1}, fft);
    for (double v : f.values) CHECK(v == 0.0);
}

TEST_CASE("ensemble variance matches the kernel variance") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 4, fft);
    const auto& k = kernels[3];
    const int n = 800;
    double s2 = 0.0;
    for (int r = 0; r < n; ++r) {
        auto f = sample_field(k, SeedPath{9, static_cast<std::uint32_t>(r), 4},
                              fft);
        s2 += f.values[10] * f.values[10];
    }
    s2 /= n;
    // variance estimator standard error ~ sigma2 sqrt(2/n)
    CHECK(std::abs(s2 - k.sigma2) <= 4.0 * k.sigma2 * std::sqrt(2.0 / n));
}

TEST_CASE("spectral derivative: order zero is the identity") {
    GridSpec grid(1, 128);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 2, fft);
    auto f = sample_field(kernels[1], SeedPath{5, 1, 2}, fft);
    std::vector<int> alpha{0};
    auto g = spectral_derivative(f, alpha, fft);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(g.values[i] == doctest::Approx(f.values[i]).epsilon(1e-12));
}

TEST_CASE("spectral derivative of a pure harmonic") {
    GridSpec grid(1, 128);
    FieldSample f{.level = 1,
                  .grid = grid,
                  .values = std::vector<double>(grid.size()),
                  .seed_path = {}};
    for (int i = 0; i < grid.points(); ++i)
        f.values[static_cast<std::size_t>(i)] =
            std::cos(2.0 * M_PI * grid.coord(i));
    Fft fft(grid);
    std::vector<int> alpha{1};
    auto g = spectral_derivative(f, alpha, fft);
    for (int i = 0; i < grid.points(); ++i)
        CHECK(g.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(-2.0 * M_PI *
                              std::sin(2.0 * M_PI * grid.coord(i)))
                  .epsilon(1e-9));
}

TEST_CASE("derivative second moment matches a direct lattice sum") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 4, fft);
    const auto& k = kernels[2];
    std::vector<int> alpha{1};
    double direct = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double w = 2.0 * M_PI * grid.freq(static_cast<int>(i));
        direct += w * w * k.eigenvalues[i];
    }
    CHECK(derivative_second_moment(k, alpha) ==
          doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("lognormal weight is positive with unit mean") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 3, fft);
    const auto& k = kernels[2];
    const double gamma = 0.8;
    const int n = 400;
    double mean = 0.0;
    std::size_t probe = 17;
    for (int r = 0; r < n; ++r) {
        auto f = sample_field(k, SeedPath{3, static_cast<std::uint32_t>(r), 3},
                              fft);
        auto x = lognormal_weight(f, gamma, k);
        for (double v : x.values) CHECK(v > 0.0);
        mean += x.values[probe];
    }
    mean /= n;
    // E[X] = 1; SE of the lognormal sample mean
    double se = std::sqrt((std::exp(gamma * gamma * k.sigma2) - 1.0) / n);
    CHECK(std::abs(mean - 1.0) <= 5.0 * se);
}

TEST_CASE("lognormal weight rejects gamma outside (0, sqrt(2d))") {
    GridSpec grid(1, 128);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 2, fft);
    auto f = sample_field(kernels[0], SeedPath{1, 0, 1}, fft);
    CHECK_THROWS_AS(lognormal_weight(f, 0.0, kernels[0]), GammaOutOfRange);
    CHECK_THROWS_AS(lognormal_weight(f, 2.0, kernels[0]), GammaOutOfRange);
}

TEST_CASE("distinct levels give independent-looking draws") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 4, fft);
    const int n = 400;
    double cross = 0.0;
    for (int r = 0; r < n; ++r) {
        auto u = static_cast<std::uint32_t>(r);
        auto f3 = sample_field(kernels[2], SeedPath{11, u, 3}, fft);
        auto f4 = sample_field(kernels[3], SeedPath{11, u, 4}, fft);
        cross += f3.values[0] * f4.values[0];
    }
    cross /= n;
    double sigma_mc =
        std::sqrt(kernels[2].sigma2 * kernels[3].sigma2 / n);
    CHECK(std::abs(cross) <= 4.0 * sigma_mc);
}
