#include <cmath>
#include <complex>

#include <doctest.h>

#include "torusgmc/analysis.hpp"
#include "torusgmc/errors.hpp"
#include "torusgmc/kernel.hpp"
#include "torusgmc/measure.hpp"

using namespace gmc;

namespace {

std::vector<GridKernel> small_kernels(const GridSpec& grid, int levels,
                                      Fft& fft) {
    auto phi = RadialProfile::build_phi(grid.dim(), 64);
    auto q = RadialProfile::build_q(grid.dim(), 64);
    return build_kernels(phi, q, grid, levels, fft);
}

}  // namespace

TEST_CASE("uniform start: unit mass, flat density") {
    GridSpec grid(1, 128);
    auto u = MeasureState::uniform(grid);
    CHECK(u.total_mass == 1.0);
    for (double v : u.density) CHECK(v == 1.0);
    CHECK(u.level == 0);
    CHECK(u.ledger.empty());
}

TEST_CASE("cascade: nonnegative density, populated ledger, checkpoints") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 4, fft);
    auto res = run_cascade(kernels, 0.5, 4, 21, 0, {2, 4}, fft);
    CHECK(res.final_state.level == 4);
    CHECK(res.mass_path.size() == 4);
    REQUIRE(res.checkpoints.size() == 2);
    CHECK(res.checkpoints[0].level == 2);
    CHECK(res.checkpoints[1].level == 4);
    for (double v : res.final_state.density) CHECK(v >= 0.0);
    REQUIRE(res.final_state.ledger.size() == 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(res.final_state.ledger[static_cast<std::size_t>(j)].level ==
              j + 1);
        CHECK(res.final_state.ledger[static_cast<std::size_t>(j)].sigma2 ==
              kernels[static_cast<std::size_t>(j)].sigma2);
    }
}

TEST_CASE("cascade is deterministic in (seed, replica)") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 3, fft);
    auto a = run_cascade(kernels, 0.6, 3, 5, 2, {}, fft);
    auto b = run_cascade(kernels, 0.6, 3, 5, 2, {}, fft);
    CHECK(a.final_state.density == b.final_state.density);
    auto c = run_cascade(kernels, 0.6, 3, 6, 2, {}, fft);
    CHECK(a.final_state.density != c.final_state.density);
}

TEST_CASE("spectrum: coefficient at 0 is the total mass, Hermitian "
          "symmetry") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 4, fft);
    auto res = run_cascade(kernels, 0.5, 4, 33, 1, {}, fft);
    auto spec = spectrum(res.final_state, fft);
    CHECK(spec.alias_limit == 64);
    CHECK(spec.coeff[0].real() ==
          doctest::Approx(res.final_state.total_mass).epsilon(1e-12));
    CHECK(spec.coeff[0].imag() == doctest::Approx(0.0).epsilon(1e-14));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        auto c = spec.coeff[grid.conjugate_index(i)];
        CHECK(spec.coeff[i].real() == doctest::Approx(c.real()).epsilon(1e-10));
        CHECK(spec.coeff[i].imag() ==
              doctest::Approx(-c.imag()).epsilon(1e-10));
    }
}

TEST_CASE("uniform measure has a pure point spectrum at n = 0") {
    GridSpec grid(1, 128);
    Fft fft(grid);
    auto spec = spectrum(MeasureState::uniform(grid), fft);
    CHECK(spec.coeff[0].real() == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(std::abs(spec.coeff[i]) <= 1e-12);
}

TEST_CASE("martingale: ensemble mean mass stays near 1") {
    GridSpec grid(1, 256);
    Fft fft(grid);
    auto kernels = small_kernels(grid, 4, fft);
    const int n = 128;
    double mean = 0.0, m2 = 0.0;
    for (int r = 0; r < n; ++r) {
        auto res = run_cascade(kernels, 0.5, 4, 77,
                               static_cast<std::uint32_t>(r), {}, fft);
        double m = res.mass_path.back();
        mean += m;
        m2 += m * m;
    }
    mean /= n;
    double var = m2 / n - mean * mean;
    double se = std::sqrt(var / n);
    CHECK(std::abs(mean - 1.0) <= 4.0 * se);
}

TEST_CASE("cube energies: uniform gives dimension d, point mass gives 0") {
    for (int d : {1, 2}) {
        GridSpec grid(d, 64);
        auto u = MeasureState::uniform(grid);
        // sum over 2^{kd} cubes of (2^{-kd})^2 = 2^{-kd}
        for (int k = 1; k <= 3; ++k)
            CHECK(cube_energy(u, k) ==
                  doctest::Approx(std::pow(2.0, -k * d)).epsilon(1e-12));

        MeasureState point = u;
        for (double& v : point.density) v = 0.0;
        point.density[3] = static_cast<double>(grid.size());
        point.total_mass = 1.0;
        for (int k = 1; k <= 3; ++k)
            CHECK(cube_energy(point, k) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("correlation dimension recovers uniform and point-mass limits "
          "exactly") {
    GridSpec grid(1, 256);
    std::vector<MeasureState> uniform_states(4, MeasureState::uniform(grid));
    auto est = estimate_correlation_dim(uniform_states);
    CHECK(est.dimension == doctest::Approx(1.0).epsilon(1e-9));

    MeasureState point = MeasureState::uniform(grid);
    for (double& v : point.density) v = 0.0;
    point.density[5] = static_cast<double>(grid.size());
    point.total_mass = 1.0;
    std::vector<MeasureState> point_states(4, point);
    auto est0 = estimate_correlation_dim(point_states);
    CHECK(est0.dimension == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("cube energy refuses cubes below 8 cells") {
    GridSpec grid(1, 64);
    auto u = MeasureState::uniform(grid);
    CHECK_THROWS_AS(cube_energy(u, 4), ScaleUnresolvable);
}
