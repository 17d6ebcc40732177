#include "torusgmc/sampler.hpp"

#include <cmath>
#include <complex>

#include "torusgmc/errors.hpp"

namespace gmc {

FieldSample sample_field(const GridKernel& kernel, const SeedPath& path,
                         Fft& fft) {
    const GridSpec& grid = kernel.grid;
    if (!(grid == fft.grid())) throw Error("sample_field: grid mismatch");
    cvector coeff(grid.size(), {0.0, 0.0});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t c = grid.conjugate_index(i);
        double amp = std::sqrt(kernel.eigenvalues[i]);
        auto g = rng::normal_pair(path, std::min(i, c));
        if (c == i) {
            coeff[i] = amp * g[0];
        } else if (i < c) {
            coeff[i] = {amp * g[0] * inv_sqrt2, amp * g[1] * inv_sqrt2};
        } else {
            // conjugate of the canonical representative
            coeff[i] = {amp * g[0] * inv_sqrt2, -amp * g[1] * inv_sqrt2};
        }
    }
    fft.backward(coeff);

    FieldSample out{.level = kernel.level,
                    .grid = grid,
                    .values = std::vector<double>(grid.size()),
                    .seed_path = path};
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = coeff[i].real();
        max_re = std::max(max_re, std::abs(coeff[i].real()));
        max_im = std::max(max_im, std::abs(coeff[i].imag()));
    }
    if (max_im > 1e-10 * std::max(max_re, 1e-300) && max_im > 1e-14)
        throw Error("sample_field: synthesis not real");
    return out;
}

FieldSample spectral_derivative(const FieldSample& field,
                                std::span<const int> alpha, Fft& fft) {
    const GridSpec& grid = field.grid;
    if (static_cast<int>(alpha.size()) != grid.dim())
        throw Error("spectral_derivative: alpha size mismatch");
    int order = 0;
    for (int a : alpha) order += a;
    if (order > grid.dim())
        throw Error("spectral_derivative: |alpha| exceeds dimension");

    cvector buf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) buf[i] = field.values[i];
    fft.forward(buf);
    const double inv_n = 1.0 / static_cast<double>(grid.size());
    const std::complex<double> two_pi_i(0.0, 2.0 * M_PI);
    MultiIndex idx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        std::complex<double> f = inv_n;
        for (int a = 0; a < grid.dim(); ++a)
            for (int r = 0; r < alpha[static_cast<std::size_t>(a)]; ++r)
                f *= two_pi_i * static_cast<double>(grid.freq(idx[a]));
        buf[i] *= f;
    }
    fft.backward(buf);
    FieldSample out{.level = field.level,
                    .grid = grid,
                    .values = std::vector<double>(grid.size()),
                    .seed_path = field.seed_path};
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.values[i] = buf[i].real();
    return out;
}

double derivative_second_moment(const GridKernel& kernel,
                                std::span<const int> alpha) {
    const GridSpec& grid = kernel.grid;
    if (static_cast<int>(alpha.size()) != grid.dim())
        throw Error("derivative_second_moment: alpha size mismatch");
    MultiIndex idx;
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        double f = 1.0;
        for (int a = 0; a < grid.dim(); ++a) {
            double w = 2.0 * M_PI * grid.freq(idx[a]);
            for (int r = 0; r < alpha[static_cast<std::size_t>(a)]; ++r)
                f *= w * w;
        }
        s += f * kernel.eigenvalues[i];
    }
    return s;
}

WeightField lognormal_weight(const FieldSample& field, double gamma,
                             const GridKernel& kernel) {
    const double gamma_max = std::sqrt(2.0 * field.grid.dim());
    if (!(gamma > 0.0) || !(gamma < gamma_max))
        throw GammaOutOfRange("lognormal_weight: gamma must lie in (0, sqrt(2d)) = (0, " +
                              std::to_string(gamma_max) + ")");
    if (field.level != kernel.level)
        throw LevelMismatch("lognormal_weight: field/kernel level mismatch");
    WeightField w{.level = field.level,
                  .values = std::vector<double>(field.values.size()),
                  .sigma2 = kernel.sigma2};
    const double shift = 0.5 * gamma * gamma * kernel.sigma2;
    for (std::size_t i = 0; i < field.values.size(); ++i)
        w.values[i] = std::exp(gamma * field.values[i] - shift);
    return w;
}

}  // namespace gmc
