#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "torusgmc/analysis.hpp"
#include "torusgmc/errors.hpp"

using namespace gmc;

TEST_CASE("predicted dimension: both branches and the crossover") {
    // d = 1: crossover at sqrt(2)/2
    CHECK(predicted_dimension(0.4, 1) == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(predicted_dimension(1.0, 1) ==
          doctest::Approx((std::sqrt(2.0) - 1.0) * (std::sqrt(2.0) - 1.0))
              .epsilon(1e-12));
    // d = 2: crossover at 1
    CHECK(predicted_dimension(0.5, 2) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(predicted_dimension(1.5, 2) ==
          doctest::Approx((2.0 - 1.5) * (2.0 - 1.5)).epsilon(1e-12));
    // continuity at the crossover
    double c = std::sqrt(2.0) / 2.0;
    CHECK(predicted_dimension(c - 1e-9, 1) ==
          doctest::Approx(predicted_dimension(c + 1e-9, 1)).epsilon(1e-6));
}

TEST_CASE("predicted dimension rejects gamma outside (0, sqrt(2d))") {
    CHECK_THROWS_AS(predicted_dimension(0.0, 1), GammaOutOfRange);
    CHECK_THROWS_AS(predicted_dimension(std::sqrt(2.0), 1), GammaOutOfRange);
    CHECK_THROWS_AS(predicted_dimension(-0.3, 2), GammaOutOfRange);
}

TEST_CASE("zeta argmax: closed form agrees with golden-section search") {
    for (double gamma : {0.3, 0.5, 0.8, 1.1}) {
        for (int d : {1, 2}) {
            double lo = 1.0, hi = 2.0;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 200; ++it) {
                double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
                if (zeta(a, gamma, d) < zeta(b, gamma, d))
                    lo = a;
                else
                    hi = b;
            }
            CHECK(zeta_argmax(gamma, d) ==
                  doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));
        }
    }
}

TEST_CASE("FL window is feasible in the verified regime") {
    auto w = fl_window(0.5, 1, 0.4);
    CHECK(w.feasible);
    CHECK(w.p > 1.0);
    CHECK(w.q >= 2.0);
}

TEST_CASE("power-law shell statistics are recovered to high accuracy") {
    // exact synthetic spectra: sup-power 2^{-k s} per shell
    for (double s : {0.3, 0.8, 1.5}) {
        ShellStats st;
        for (int k = 0; k <= 9; ++k) {
            st.shells.push_back(k);
            st.sup_power.push_back(std::pow(2.0, -s * k));
            st.mean_power.push_back(std::pow(2.0, -s * k));
            st.counts.push_back(1);
        }
        std::vector<ShellStats> ens{st, st};
        auto est = estimate_fourier_dim(ens, DimMethod::fourier_sup, 2, 2, 9);
        CHECK(std::abs(est.dimension - s) <= 1e-6);
        auto estm = estimate_fourier_dim(ens, DimMethod::fourier_mean, 2, 2, 9);
        CHECK(std::abs(estm.dimension - s) <= 1e-6);
    }
}

TEST_CASE("estimator needs at least 3 usable shells") {
    ShellStats st;
    for (int k = 0; k <= 3; ++k) {
        st.shells.push_back(k);
        st.sup_power.push_back(1.0);
        st.mean_power.push_back(1.0);
        st.counts.push_back(1);
    }
    std::vector<ShellStats> ens{st};
    CHECK_THROWS_AS(
        estimate_fourier_dim(ens, DimMethod::fourier_sup, 1, 2, 3),
        InsufficientShells);
    std::vector<ShellStats> empty;
    CHECK_THROWS_AS(
        estimate_fourier_dim(empty, DimMethod::fourier_sup, 1, 2, 9),
        InsufficientShells);
}

TEST_CASE("correlation regression recovers an exact power law") {
    // energy 2^{-k s} at scale k = 2..8
    for (double s : {0.4, 1.0}) {
        std::vector<std::vector<double>> per_replica(3);
        for (auto& r : per_replica)
            for (int k = 2; k <= 8; ++k) r.push_back(std::pow(2.0, -s * k));
        auto est = correlation_dim_from_energies(per_replica, 2, 1);
        CHECK(std::abs(est.dimension - s) <= 1e-9);
    }
}

TEST_CASE("FL trend: flat sequences are bounded, growing ones are not") {
    std::vector<std::vector<double>> flat(8, std::vector<double>{1.0, 1.1});
    CHECK(fl_moment_trend(flat, 2.0).bounded);
    std::vector<std::vector<double>> growing;
    for (int m = 0; m < 8; ++m)
        growing.push_back({std::pow(2.0, m)});
    CHECK_FALSE(fl_moment_trend(growing, 1.0).bounded);
}

TEST_CASE("fl_norm rejects q < 1") {
    GridSpec grid(1, 64);
    SpectrumTable spec{grid,
                       std::vector<std::complex<double>>(grid.size()), 16};
    CHECK_THROWS_AS(fl_norm(spec, 0.2, 0.5), Error);
}
