#include "torusgmc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace gmc {

GaussLegendre::GaussLegendre(int n) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

namespace {

const GaussLegendre& gl10() {
    static GaussLegendre g(10);
    return g;
}
const GaussLegendre& gl20() {
    static GaussLegendre g(20);
    return g;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int depth) {
    double coarse = gl10().integrate(f, a, b);
    double fine = gl20().integrate(f, a, b);
    if (std::abs(fine - coarse) <= abs_tol || depth <= 0) return fine;
    double mid = 0.5 * (a + b);
    return adaptive_rec(f, a, mid, 0.5 * abs_tol, depth - 1) +
           adaptive_rec(f, mid, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a,
                      double b, double abs_tol, int max_depth) {
    if (b <= a) return 0.0;
    return adaptive_rec(f, a, b, abs_tol, max_depth);
}

UniformSpline::UniformSpline(std::vector<double> values, double x_max)
    : y_(std::move(values)), x_max_(x_max) {
    const std::size_t n = y_.size();
    if (n < 4) throw std::invalid_argument("UniformSpline: too few samples");
    h_ = x_max_ / static_cast<double>(n - 1);
    m_.assign(n, 0.0);
    // Clamped spline with zero slope at both ends (the tabulated profiles
    // are even at 0 and flat at the support edge); second derivatives solve
    //   2 m_0        + m_1     = 6 (y_1 - y_0) / h^2
    //   m_{i-1} + 4 m_i + m_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2
    //   m_{n-2} + 2 m_{n-1}    = -6 (y_{n-1} - y_{n-2}) / h^2
    // by the Thomas algorithm.
    std::vector<double> cp(n, 0.0), dp(n, 0.0);
    const double h2 = h_ * h_;
    cp[0] = 1.0 / 2.0;
    dp[0] = 6.0 * (y_[1] - y_[0]) / h2 / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double denom = 4.0 - cp[i - 1];
        cp[i] = 1.0 / denom;
        dp[i] = (6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / h2 -
                 dp[i - 1]) /
                denom;
    }
    {
        double denom = 2.0 - cp[n - 2];
        dp[n - 1] = (-6.0 * (y_[n - 1] - y_[n - 2]) / h2 - dp[n - 2]) / denom;
    }
    m_[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m_[i] = dp[i] - cp[i] * m_[i + 1];
}

double UniformSpline::operator()(double x) const {
    if (x < 0.0) x = -x;
    if (x >= x_max_) return 0.0;
    const std::size_t n = y_.size();
    double u = x / h_;
    std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= n) i = n - 2;
    double a = u - static_cast<double>(i);
    double b = 1.0 - a;
    return b * y_[i] + a * y_[i + 1] +
           ((b * b * b - b) * m_[i] + (a * a * a - a) * m_[i + 1]) * h_ * h_ /
               6.0;
}

}  // namespace gmc
