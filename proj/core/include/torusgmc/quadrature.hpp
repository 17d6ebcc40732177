#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gmc {

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int n);

    template <class F>
    double integrate(F&& f, double a, double b) const {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * f(mid + half * nodes[i]);
        return half * s;
    }
};

// Adaptive Gauss-Legendre: refine by bisection until the difference between
// an n-point and 2n-point rule drops below abs_tol on each subinterval.
double adaptive_gauss(const std::function<double(double)>& f, double a,
                      double b, double abs_tol, int max_depth = 24);

// Cubic spline over uniformly spaced samples on [0, x_max], clamped to zero
// slope at both ends (the tabulated profiles are even at 0 and flat at the
// support edge).
class UniformSpline {
  public:
    UniformSpline() = default;
    UniformSpline(std::vector<double> values, double x_max);
    double operator()(double x) const;  // 0 beyond x_max
    double x_max() const { return x_max_; }

  private:
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives
    double x_max_ = 0.0;
    double h_ = 0.0;
};

}  // namespace gmc
