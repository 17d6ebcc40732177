#include "torusgmc/profile.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "torusgmc/errors.hpp"
#include "torusgmc/fft.hpp"
#include "torusgmc/grid.hpp"

namespace gmc {

namespace {

// C-infinity bump on (-1,1)
double bump_unit(double r) {
    r = std::abs(r);
    if (r >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r * r));
}

// bump supported in B(0,1/2)
double bump_half(double r) { return bump_unit(2.0 * r); }

// surface area of the unit sphere S^{d-1} in R^d
double sphere_surface(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

// composite Gauss-Legendre with fixed panel count
template <class F>
double composite_gl(const GaussLegendre& gl, F&& f, double a, double b,
                    int panels) {
    double s = 0.0, w = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        s += gl.integrate(f, a + p * w, a + (p + 1) * w);
    return s;
}

// Autocorrelation (chi * chi~)(s) of the isotropic bump chi = bump_half
// on R^d, reduced to a 1d (d=1) or 2d quadrature using isotropy of the
// d-1 transverse coordinates.
double autocorr(int d, double s, const GaussLegendre& gl, int panels) {
    if (d == 1) {
        auto f = [&](double x) { return bump_half(x) * bump_half(x - s); };
        double lo = std::max(-0.5, s - 0.5);
        return composite_gl(gl, f, lo, 0.5, panels);
    }
    double wcoef = sphere_surface(d - 1);
    auto f = [&](double x1) {
        auto g = [&](double rho) {
            double r1 = std::sqrt(x1 * x1 + rho * rho);
            double r2 = std::sqrt((x1 - s) * (x1 - s) + rho * rho);
            return std::pow(rho, d - 2) * bump_half(r1) * bump_half(r2);
        };
        return wcoef * composite_gl(gl, g, 0.0, 0.5, panels);
    };
    double lo = std::max(-0.5, s - 0.5);
    return composite_gl(gl, f, lo, 0.5, panels);
}

const GaussLegendre& gl16() {
    static GaussLegendre g(16);
    return g;
}

// Isotropic Fourier transform of chi = bump_half at radial frequency rho,
// by direct quadrature over the support [0, 1/2]. The integrand is entire in
// r on each panel and the panel count tracks the oscillation, so this is
// accurate to near machine precision.
double chi_hat(int d, double rho) {
    int panels = std::max(8, static_cast<int>(std::ceil(rho)) + 4);
    auto f = [&](double r) {
        double c = bump_half(r);
        double x = 2.0 * M_PI * rho * r;
        switch (d) {
            case 1:
                return 2.0 * c * std::cos(x);
            case 2:
                return 2.0 * M_PI * r * c * std::cyl_bessel_j(0.0, x);
            case 3:
                return 4.0 * M_PI * r * r * c *
                       (x == 0.0 ? 1.0 : std::sin(x) / x);
            default:
                throw Error("chi_hat: dimension > 3 not supported");
        }
    };
    return composite_gl(gl16(), f, 0.0, 0.5, panels);
}

std::mutex cache_mutex;
std::map<std::tuple<int, int, int>, RadialProfile>& profile_cache() {
    static std::map<std::tuple<int, int, int>, RadialProfile> c;
    return c;
}

}  // namespace

void RadialProfile::certify_positive_definite() {
    // Both profiles are scalings of the same autocorrelation chi*chi~.
    // Certify on a periodic grid of period 2 (covering the support [-1,1]):
    // the DFT of the sampled generating bump gives the spectrum of the
    // sampled autocorrelation as |X_n|^2, and the bump is C-infinity, so
    // the Riemann sums behind this identity are spectrally accurate.
    int g = dim_ <= 2 ? 256 : 64;
    GridSpec grid(dim_, g);
    cvector base(grid.size());
    MultiIndex idx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        double r2 = 0.0;
        for (int a = 0; a < dim_; ++a) {
            double t = 2.0 * grid.coord(idx[a]);  // [-1,1)
            r2 += t * t;
        }
        base[i] = bump_half(std::sqrt(r2));
    }
    Fft fft(grid);
    fft.forward(base);
    double min_e = 1e300, max_e = -1e300, total = 0.0;
    for (auto& c : base) {
        double e = std::norm(c);
        min_e = std::min(min_e, e);
        max_e = std::max(max_e, e);
        total += e;
    }
    cert_.min_eigenvalue = min_e;
    cert_.max_eigenvalue = max_e;
    if (min_e < -1e-10 * max_e)
        throw CertificationFailed("RadialProfile: spectral sampling has "
                                  "negative eigenvalue",
                                  min_e);

    // consistency of the tabulated profile with the certified object: invert
    // the spectrum (scaled so the zero-offset value matches) and compare
    const double v0 = (*this)(0.0);
    for (auto& c : base) c = std::norm(c) * static_cast<double>(grid.size()) *
                             v0 / total;
    fft.backward(base);
    const double inv_n = 1.0 / static_cast<double>(grid.size());
    double max_dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        double r2 = 0.0;
        for (int a = 0; a < dim_; ++a) {
            double t = 2.0 * grid.coord(idx[a]);
            r2 += t * t;
        }
        max_dev = std::max(max_dev, std::abs(base[i].real() * inv_n -
                                             (*this)(std::sqrt(r2))));
    }
    if (max_dev > (dim_ <= 2 ? 1e-6 : 1e-3) * v0)
        throw QuadratureUnstable(
            "RadialProfile: tabulated profile deviates from its spectral "
            "reconstruction by " + std::to_string(max_dev));
}

RadialProfile RadialProfile::build_phi(int dim, int oversample) {
    if (oversample < 64)
        throw Error("build_phi: oversample must be >= 64");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = profile_cache().find({0, dim, oversample});
        if (it != profile_cache().end()) return it->second;
    }
    RadialProfile p;
    p.kind_ = ProfileKind::phi;
    p.dim_ = dim;
    p.oversample_ = oversample;

    GaussLegendre gl(12);
    int panels = 16;
    double a0 = autocorr(dim, 0.0, gl, panels);
    if (!(a0 > 0.0) || !std::isfinite(a0))
        throw QuadratureUnstable("build_phi: autocorrelation at 0 not positive");
    // convergence check against a finer rule
    double a0f = autocorr(dim, 0.0, gl, 2 * panels);
    if (std::abs(a0f - a0) > 1e-10 * a0)
        throw QuadratureUnstable("build_phi: radial quadrature not converged");

    int n = 8 * oversample + 1;
    std::vector<double> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = static_cast<double>(i) / (n - 1);
        table[static_cast<std::size_t>(i)] = autocorr(dim, s, gl, panels) / a0f;
    }
    table[0] = 1.0;
    table[static_cast<std::size_t>(n - 1)] = 0.0;
    p.table_ = UniformSpline(std::move(table), 1.0);

    // quadratic Lipschitz constant from the sampled table
    double c_phi = 0.0;
    for (int i = 1; i < n; ++i) {
        double r = static_cast<double>(i) / (n - 1);
        c_phi = std::max(c_phi, (1.0 - p.table_(r)) / (r * r));
    }
    p.c_phi_ = c_phi;

    p.cert_.value_at_zero = 1.0;
    double tail = 0.0;
    for (double r = 1.0; r <= 2.0; r += 0.01)
        tail = std::max(tail, std::abs(p(r)));
    p.cert_.tail_max = tail;
    p.certify_positive_definite();

    std::lock_guard<std::mutex> lock(cache_mutex);
    profile_cache().insert({{0, dim, oversample}, p});
    return p;
}

RadialProfile RadialProfile::build_q(int dim, int oversample) {
    if (oversample < 64)
        throw Error("build_q: oversample must be >= 64");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = profile_cache().find({1, dim, oversample});
        if (it != profile_cache().end()) return it->second;
    }
    RadialProfile p;
    p.kind_ = ProfileKind::q;
    p.dim_ = dim;
    p.oversample_ = oversample;

    GaussLegendre gl(12);
    const int panels = 16;
    double a0 = autocorr(dim, 0.0, gl, panels);
    double a0f = autocorr(dim, 0.0, gl, 2 * panels);
    if (!(a0f > 0.0) || std::abs(a0f - a0) > 1e-10 * a0f)
        throw QuadratureUnstable("build_q: radial quadrature not converged");
    // int (chi * chi~) = (int chi)^2, so dividing by chi^(0)^2 makes the
    // profile integrate to 1
    double intchi = chi_hat(dim, 0.0);
    if (!(intchi > 0.0))
        throw QuadratureUnstable("build_q: chi^(0) not positive");
    p.integral_ = intchi;
    const double norm = intchi * intchi;

    int n = 8 * oversample + 1;
    std::vector<double> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = static_cast<double>(i) / (n - 1);
        table[static_cast<std::size_t>(i)] = autocorr(dim, s, gl, panels) / norm;
    }
    table[static_cast<std::size_t>(n - 1)] = 0.0;
    p.table_ = UniformSpline(std::move(table), 1.0);

    // certificate: independent check that the normalized integral is 1
    double surf = sphere_surface(dim);
    auto f = [&](double r) {
        return std::pow(r, dim - 1) * p.table_(r);
    };
    double check = surf * composite_gl(gl, f, 0.0, 1.0, 48);
    p.cert_.value_at_zero = check;
    if (std::abs(check - 1.0) > 1e-6)
        throw QuadratureUnstable("build_q: unit-integral check failed");
    double tail = 0.0;
    for (double r = 1.0; r <= 2.0; r += 0.01)
        tail = std::max(tail, std::abs(p(r)));
    p.cert_.tail_max = tail;
    p.certify_positive_definite();

    std::lock_guard<std::mutex> lock(cache_mutex);
    profile_cache().insert({{1, dim, oversample}, p});
    return p;
}

double RadialProfile::operator()(double r) const {
    r = std::abs(r);
    if (r >= 1.0) return 0.0;
    return table_(r);
}

double RadialProfile::fourier_exact(double rho) const {
    if (kind_ != ProfileKind::q)
        throw Error("fourier_exact: only defined for the mollifier profile");
    rho = std::abs(rho);
    // |Q^| < 1e-18 beyond rho ~ 64 for this bump in d <= 3
    if (rho >= 64.0) return 0.0;
    double ratio = chi_hat(dim_, rho) / integral_;
    return ratio * ratio;
}

void RadialProfile::extend_fourier_table(double rho_max) const {
    // Q^ is below 1e-12 beyond rho ~ 32; the table is capped there and the
    // transform treated as zero beyond.
    constexpr double kRhoCut = 32.0;
    rho_max = std::min(rho_max, kRhoCut);
    if (fourier_table_ && fourier_rho_max_ >= rho_max) return;
    rho_max = kRhoCut;  // build the full table once

    const int per_unit = 64;
    int n = static_cast<int>(rho_max * per_unit) + 1;
    std::vector<double> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        table[static_cast<std::size_t>(i)] =
            fourier_exact(static_cast<double>(i) / per_unit);
    fourier_table_ =
        std::make_shared<const UniformSpline>(std::move(table), rho_max);
    fourier_rho_max_ = rho_max;
}

double RadialProfile::fourier(double rho) const {
    rho = std::abs(rho);
    std::lock_guard<std::mutex> lock(cache_mutex);
    extend_fourier_table(rho);
    if (rho >= fourier_rho_max_) return 0.0;
    return (*fourier_table_)(rho);
}

std::shared_ptr<const UniformSpline> RadialProfile::fourier_spline(
    double rho_max) const {
    std::lock_guard<std::mutex> lock(cache_mutex);
    extend_fourier_table(rho_max);
    return fourier_table_;
}

}  // namespace gmc
