#include <cmath>
#include <vector>

#include <doctest.h>

#include "torusgmc/errors.hpp"
#include "torusgmc/kernel.hpp"
#include "torusgmc/pou.hpp"

using namespace gmc;

TEST_CASE("theta: smooth window with exact half-overlap symmetry") {
    CHECK(theta(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(theta(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(theta(-0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(theta(1.0) == 0.0);
    CHECK(theta(1.3) == 0.0);
    // integer translates sum to 1
    for (double t : {0.13, 0.37, 0.71, 0.94}) {
        double s = 0.0;
        for (int h = -2; h <= 2; ++h) s += theta(t - h);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("windows tile the torus: partition deviation and support tail") {
    GridSpec grid(1, 512);
    Fft fft(grid);
    for (int k = 2; k <= 6; ++k) {
        auto pou = build_pou(k, grid, fft);
        CHECK(pou.scale == k);
        CHECK(pou.cubes_per_axis == (1 << k));
        CHECK(pou.partition_max_deviation <= 1e-12);
        CHECK(pou.support_tail == 0.0);
    }
}

TEST_CASE("scaled derivative ratios are stable across scales") {
    GridSpec grid(1, 1024);
    Fft fft(grid);
    std::vector<PouFamily> fams;
    for (int k = 3; k <= 6; ++k) fams.push_back(build_pou(k, grid, fft));
    for (int order = 1; order <= 2; ++order) {
        double lo = 1e300, hi = 0.0;
        for (const auto& f : fams) {
            double r = f.derivative_ratio.at(order);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        CHECK(hi / lo <= 1.25);
    }
}

TEST_CASE("window construction refuses unresolvable scales") {
    GridSpec grid(1, 64);
    Fft fft(grid);
    CHECK_THROWS_AS(build_pou(4, grid, fft), ScaleUnresolvable);
}

TEST_CASE("localized increments sum exactly to the global increment") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto phi = RadialProfile::build_phi(1, 64);
    auto q = RadialProfile::build_q(1, 64);
    auto kernels = build_kernels(phi, q, grid, 3, fft);
    const double gamma = 0.5, tau = 0.4;
    auto tracked = default_tracked_frequencies(grid);
    for (std::uint64_t seed : {2ULL, 9ULL, 17ULL}) {
        // the window scale must match the level of the incoming weight
        for (int k = 1; k <= 3; ++k) {
            MeasureState prev =
                k == 1 ? MeasureState::uniform(grid)
                       : run_cascade(kernels, gamma, k - 1, seed, 0, {}, fft)
                             .final_state;
            auto f = sample_field(
                kernels[static_cast<std::size_t>(k - 1)],
                SeedPath{seed, 0, k}, fft);
            auto w = lognormal_weight(
                f, gamma, kernels[static_cast<std::size_t>(k - 1)]);
            auto pou = build_pou(k, grid, fft);
            auto rep = decoupling_check(prev, w, pou, tau, tracked, fft);
            CHECK(rep.max_rel_error <= 1e-10);
        }
    }
}

TEST_CASE("tracked frequencies stay below the aliasing guard") {
    GridSpec grid(1, 256);
    auto tracked = default_tracked_frequencies(grid);
    CHECK(!tracked.empty());
    for (const auto& n : tracked) {
        REQUIRE(n.size() == 1);
        CHECK(std::abs(n[0]) < grid.points() / 4);
        CHECK(n[0] != 0);
    }
}
