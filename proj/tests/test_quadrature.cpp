#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "torusgmc/quadrature.hpp"

using namespace gmc;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    GaussLegendre gl(5);
    auto f = [](double x) { return std::pow(x, 9); };
    CHECK(gl.integrate(f, 0.0, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
    auto g = [](double x) { return 3.0 * x * x; };
    CHECK(gl.integrate(g, -1.0, 2.0) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Legendre weights sum to the interval length") {
    for (int n : {4, 10, 16}) {
        GaussLegendre gl(n);
        double s = 0.0;
        for (double w : gl.weights) s += w;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("adaptive quadrature hits a known integral") {
    auto f = [](double x) { return std::sin(x); };
    double v = adaptive_gauss(f, 0.0, M_PI, 1e-13);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adaptive_gauss(f, 1.0, 1.0, 1e-13) == 0.0);
}

TEST_CASE("spline reproduces a smooth flat-ended function") {
    // cos(pi x) on [0,1] has zero slope at both ends, matching the clamped
    // boundary conditions
    const int n = 257;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] =
            std::cos(M_PI * static_cast<double>(i) / (n - 1));
    UniformSpline s(y, 1.0);
    for (double x : {0.013, 0.25, 0.4999, 0.77, 0.995})
        CHECK(s(x) == doctest::Approx(std::cos(M_PI * x)).epsilon(1e-9));
}

TEST_CASE("spline is even in x and zero beyond its range") {
    std::vector<double> y{1.0, 0.7, 0.3, 0.1, 0.0};
    UniformSpline s(y, 1.0);
    CHECK(s(-0.3) == s(0.3));
    CHECK(s(1.0) == 0.0);
    CHECK(s(2.5) == 0.0);
}

TEST_CASE("spline rejects too few samples") {
    CHECK_THROWS_AS(UniformSpline({1.0, 0.0}, 1.0), std::invalid_argument);
}
