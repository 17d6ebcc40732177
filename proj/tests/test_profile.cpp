#include <cmath>

#include <doctest.h>

#include "torusgmc/errors.hpp"
#include "torusgmc/profile.hpp"

using namespace gmc;

// Reference values computed by independent high-precision quadrature of the
// generating bump chi(r) = exp(-1/(1-(2r)^2)) on B(0,1/2), d = 1.
namespace {
constexpr double kPhiHalf = 0.2544800908482456;    // Phi(0.5)
constexpr double kQHat15 = 0.001887140953825508;   // Q^(1.5)
constexpr double kQZero = 1.3502336260193837;      // Q(0)
constexpr double kQQuarter = 0.96119775579935163;  // Q(0.25)
}  // namespace

TEST_CASE("Phi: normalization, fixture value, and support") {
    auto phi = RadialProfile::build_phi(1, 64);
    CHECK(phi(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi(0.5) == doctest::Approx(kPhiHalf).epsilon(1e-9));
    CHECK(phi(1.0) == 0.0);
    CHECK(phi(1.7) == 0.0);
    CHECK(phi(-0.5) == phi(0.5));
}

TEST_CASE("Phi certificate: nonnegative spectrum, vanishing tail") {
    for (int d : {1, 2}) {
        auto phi = RadialProfile::build_phi(d, 64);
        CHECK(phi.certificate().min_eigenvalue >= 0.0);
        CHECK(phi.certificate().tail_max == 0.0);
        CHECK(phi.lipschitz_quadratic() > 0.0);
    }
}

TEST_CASE("Q: unit integral, fixture values, nonnegativity") {
    auto q = RadialProfile::build_q(1, 64);
    CHECK(q.certificate().value_at_zero == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(q(0.0) == doctest::Approx(kQZero).epsilon(1e-9));
    CHECK(q(0.25) == doctest::Approx(kQQuarter).epsilon(1e-9));
    CHECK(q(1.0) == 0.0);
    // spline interpolation may undershoot by strict rounding error
    for (double r = 0.0; r < 1.0; r += 0.01) CHECK(q(r) >= -1e-15);
    CHECK(q.certificate().min_eigenvalue >= 0.0);
}

TEST_CASE("Q transform: closed form against oracle, nonnegative everywhere") {
    auto q = RadialProfile::build_q(1, 64);
    CHECK(q.fourier_exact(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.fourier_exact(1.5) == doctest::Approx(kQHat15).epsilon(1e-10));
    CHECK(q.fourier_exact(-1.5) == q.fourier_exact(1.5));
    for (double rho = 0.0; rho < 20.0; rho += 0.37)
        CHECK(q.fourier_exact(rho) >= 0.0);
    CHECK(q.fourier_exact(100.0) == 0.0);
}

TEST_CASE("Q transform table agrees with direct quadrature") {
    auto q = RadialProfile::build_q(1, 64);
    for (double rho : {0.25, 1.0, 2.5, 7.0})
        CHECK(q.fourier(rho) ==
              doctest::Approx(q.fourier_exact(rho)).epsilon(1e-6));
}

TEST_CASE("transform decays monotonically at the origin scale") {
    auto q = RadialProfile::build_q(1, 64);
    CHECK(q.fourier_exact(0.5) < q.fourier_exact(0.0));
    CHECK(q.fourier_exact(1.0) < q.fourier_exact(0.5));
}

TEST_CASE("profiles exist in d = 2 and d = 3 with certificates") {
    for (int d : {2, 3}) {
        auto q = RadialProfile::build_q(d, 64);
        CHECK(q.certificate().value_at_zero ==
              doctest::Approx(1.0).epsilon(1e-6));
        CHECK(q.certificate().min_eigenvalue >= 0.0);
    }
}

TEST_CASE("oversample floor is enforced") {
    CHECK_THROWS_AS(RadialProfile::build_phi(1, 8), Error);
    CHECK_THROWS_AS(RadialProfile::build_q(1, 8), Error);
}
