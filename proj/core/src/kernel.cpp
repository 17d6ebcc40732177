#include "torusgmc/kernel.hpp"

#include <cmath>
#include <unordered_map>

#include "torusgmc/errors.hpp"
#include "torusgmc/quadrature.hpp"

namespace gmc {

double eval_L(const RadialProfile& phi, int j, double radius) {
    if (j < 1) throw Error("eval_L: level must be >= 1");
    radius = std::abs(radius);
    double scale = std::ldexp(1.0, j);  // 2^j
    if (radius * scale >= 1.0) return 0.0;
    auto f = [&](double u) { return phi(scale * u * radius) / u; };
    return adaptive_gauss(f, 1.0, 2.0, 1e-13);
}

double eval_L(const RadialProfile& phi, int j, std::span<const double> t) {
    double r2 = 0.0;
    for (double x : t) r2 += x * x;
    return eval_L(phi, j, std::sqrt(r2));
}

std::vector<double> build_H_grid(const RadialProfile& phi, int j,
                                 const GridSpec& grid) {
    if (j < 1) throw Error("build_H_grid: level must be >= 1");
    if ((std::int64_t(4) << j) > grid.points())
        throw ScaleUnresolvable(j, grid.points(),
                                "build_H_grid: 2^-j spans fewer than 4 cells "
                                "(level " + std::to_string(j) + ", M=" +
                                    std::to_string(grid.points()) + ")");
    const int m = grid.points();
    std::vector<double> h(grid.size(), 0.0);
    // values depend only on the squared lattice distance; cache by it
    std::unordered_map<std::int64_t, double> by_r2;
    MultiIndex idx;
    const double support = std::ldexp(1.0, -j);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        std::int64_t k2 = 0;
        for (int a = 0; a < grid.dim(); ++a) {
            int k = idx[a] < m / 2 ? idx[a] : idx[a] - m;
            k2 += std::int64_t(k) * k;
        }
        double r = std::sqrt(static_cast<double>(k2)) / m;
        if (r >= support) continue;
        auto it = by_r2.find(k2);
        if (it == by_r2.end())
            it = by_r2.emplace(k2, eval_L(phi, j, r)).first;
        h[i] = it->second;
    }
    return h;
}

std::vector<double> mollifier_spectrum(const RadialProfile& q, int j,
                                       const GridSpec& grid) {
    if (j < 1) throw Error("mollifier_spectrum: level must be >= 1");
    const double eps = mollifier_scale(j);
    // Once the mollifier support spans fewer than ~4 grid cells the grid
    // cannot resolve it; it acts as the identity there, and multiplying by
    // the aliased spectrum would only leak error into the far field.
    std::vector<double> w(grid.size(), 1.0);
    if (eps * grid.points() < 4.0) return w;
    // values depend only on |n|^2; evaluate the exact transform once per
    // distinct squared norm
    std::unordered_map<std::int64_t, double> by_n2;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto n2 = static_cast<std::int64_t>(grid.freq_norm2(i));
        auto it = by_n2.find(n2);
        if (it == by_n2.end()) {
            double v = q.fourier_exact(eps * std::sqrt(
                                                 static_cast<double>(n2)));
            it = by_n2.emplace(n2, v * v).first;
        }
        w[i] = it->second;
    }
    return w;
}

GridKernel build_K_spectral(const std::vector<double>& h_grid,
                            const std::vector<double>& mol,
                            const GridSpec& grid, int j, Fft& fft) {
    if (h_grid.size() != grid.size() || mol.size() != grid.size())
        throw Error("build_K_spectral: input size mismatch");
    GridKernel k{.level = j,
                 .grid = grid,
                 .real_samples = {},
                 .eigenvalues = {},
                 .sigma2 = 0.0,
                 .epsilon = mollifier_scale(j),
                 .support_radius = 3.0 * std::ldexp(1.0, -j),
                 .clamped_fraction = 0.0};

    cvector buf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) buf[i] = h_grid[i];
    fft.forward(buf);
    const double inv_n = 1.0 / static_cast<double>(grid.size());

    k.eigenvalues.resize(grid.size());
    double total = 0.0, removed = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double lam = buf[i].real() * inv_n * mol[i];
        total += std::abs(lam);
        if (lam < 0.0) {
            removed += -lam;
            lam = 0.0;
        }
        k.eigenvalues[i] = lam;
    }
    k.clamped_fraction = total > 0.0 ? removed / total : 0.0;
    if (k.clamped_fraction > 1e-6)
        throw ClampBudgetExceeded(
            "build_K_spectral: clamped spectral mass exceeds budget at level " +
                std::to_string(j),
            k.clamped_fraction);

    for (std::size_t i = 0; i < grid.size(); ++i) buf[i] = k.eigenvalues[i];
    fft.backward(buf);
    k.real_samples.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        k.real_samples[i] = buf[i].real();
    k.sigma2 = k.real_samples[0];
    return k;
}

std::vector<GridKernel> build_kernels(const RadialProfile& phi,
                                      const RadialProfile& q,
                                      const GridSpec& grid, int levels,
                                      Fft& fft) {
    if (levels > grid.max_level())
        throw ScaleUnresolvable(levels, grid.points(),
                                "build_kernels: requested level above cap " +
                                    std::to_string(grid.max_level()));
    std::vector<GridKernel> out;
    out.reserve(static_cast<std::size_t>(levels));
    for (int j = 1; j <= levels; ++j) {
        auto h = build_H_grid(phi, j, grid);
        auto w = mollifier_spectrum(q, j, grid);
        out.push_back(build_K_spectral(h, w, grid, j, fft));
    }
    return out;
}

LogSumReport kernel_log_sum_check(std::span<const GridKernel> kernels,
                                  const GridSpec& grid) {
    if (kernels.size() < 4)
        throw Error("kernel_log_sum_check: need at least 4 levels");
    const int levels = static_cast<int>(kernels.size());
    LogSumReport rep;
    // at offset 2^-a only levels j <= a-1 contribute (support 2^-j, plus a
    // mollified fringe), so octaves up to `levels` are fully resolved; keep
    // the offset at least 8 cells wide on the grid
    const int a_hi = std::min(levels, grid.log2_points() - 3);
    // offset (M/2^a, 0, ..., 0): flat index = (M/2^a) * M^{d-1}
    std::size_t plane = grid.size() / static_cast<std::size_t>(grid.points());
    for (int a = 2; a <= a_hi; ++a) {
        std::size_t flat =
            static_cast<std::size_t>(grid.points() >> a) * plane;
        double s = 0.0;
        for (const auto& k : kernels) s += k.real_samples[flat];
        rep.octaves.push_back(a);
        rep.sums.push_back(s);
    }
    const double log2v = std::log(2.0);
    for (std::size_t i = 0; i + 1 < rep.sums.size(); ++i) {
        double inc = rep.sums[i + 1] - rep.sums[i];
        rep.increments.push_back(inc);
        // pairs deep enough that the mollified sum has converged to its
        // logarithmic profile, and still resolved by the deepest kernel
        if (rep.octaves[i] >= 7 && rep.octaves[i + 1] <= levels)
            rep.max_deviation =
                std::max(rep.max_deviation, std::abs(inc - log2v));
    }
    return rep;
}

}  // namespace gmc
