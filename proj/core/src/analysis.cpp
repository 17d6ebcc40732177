#include "torusgmc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "torusgmc/errors.hpp"

namespace gmc {

double predicted_dimension(double gamma, int d) {
    const double gamma_max = std::sqrt(2.0 * d);
    if (!(gamma > 0.0) || !(gamma < gamma_max))
        throw GammaOutOfRange("predicted_dimension: gamma must lie in (0, " +
                              std::to_string(gamma_max) + ")");
    if (gamma < 0.5 * gamma_max) return d - gamma * gamma;
    double r = gamma_max - gamma;
    return r * r;
}

double zeta(double p, double gamma, int d) {
    return 2.0 * d + gamma * gamma - (2.0 * d / p + p * gamma * gamma);
}

double zeta_argmax(double gamma, int d) {
    double p = std::sqrt(2.0 * d) / gamma;
    return std::clamp(p, 1.0, 2.0);
}

FlWindow fl_window(double gamma, int d, double tau) {
    FlWindow w;
    w.p = std::max(1.0 + 1e-6, zeta_argmax(gamma, d) - 0.05);
    double slack = zeta(w.p, gamma, d) - tau;
    w.q = slack > 0.0 ? std::max(2.0, std::ceil(2.0 / slack)) : 8.0;
    double lhs = -(w.p - 1.0) * d + d * w.p / w.q + tau * w.p / 2.0 +
                 w.p * (w.p - 1.0) * gamma * gamma / 2.0;
    w.feasible = lhs < 0.0;
    return w;
}

ShellStats shell_stats(const SpectrumTable& spec) {
    const GridSpec& grid = spec.grid;
    // complete shells below the aliasing guard
    int k_max = -1;
    while ((2 << (k_max + 1)) <= spec.alias_limit) ++k_max;
    ShellStats st;
    if (k_max < 0) return st;
    st.shells.resize(static_cast<std::size_t>(k_max) + 1);
    st.sup_power.assign(st.shells.size(), 0.0);
    st.mean_power.assign(st.shells.size(), 0.0);
    st.counts.assign(st.shells.size(), 0);
    for (std::size_t k = 0; k < st.shells.size(); ++k)
        st.shells[k] = static_cast<int>(k);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double n2 = grid.freq_norm2(i);
        if (n2 < 1.0) continue;
        int k = static_cast<int>(std::floor(0.5 * std::log2(n2)));
        if (k > k_max) continue;
        double p = std::norm(spec.coeff[i]);
        auto ki = static_cast<std::size_t>(k);
        st.sup_power[ki] = std::max(st.sup_power[ki], p);
        st.mean_power[ki] += p;
        st.counts[ki] += 1;
    }
    for (std::size_t k = 0; k < st.shells.size(); ++k)
        if (st.counts[k] > 0)
            st.mean_power[k] /= static_cast<double>(st.counts[k]);
    return st;
}

namespace {

struct Regression {
    double slope, intercept, stderr_slope;
};

Regression linear_fit(const std::vector<double>& x,
                      const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double b = sxy / sxx;
    double a = my - b * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (a + b * x[i]);
        ss += r * r;
    }
    double se = n > 2 ? std::sqrt(ss / ((n - 2) * sxx)) : 0.0;
    return {b, a, se};
}

}  // namespace

DimEstimate estimate_fourier_dim(std::span<const ShellStats> ensemble,
                                 DimMethod mode, int d, int shell_lo,
                                 int shell_hi) {
    if (ensemble.empty())
        throw InsufficientShells("estimate_fourier_dim: empty ensemble");
    const std::size_t n_shells = ensemble.front().shells.size();
    constexpr double kFloor = 1e-20;

    std::vector<double> xs, ys;
    // the two lowest shells default to dropped: pre-asymptotic
    const auto k_lo = static_cast<std::size_t>(std::max(shell_lo, 0));
    for (std::size_t k = k_lo; k < n_shells; ++k) {
        if (ensemble.front().shells[k] > shell_hi) break;
        double mean = 0.0;
        for (const auto& st : ensemble)
            mean += (mode == DimMethod::fourier_sup ? st.sup_power[k]
                                                    : st.mean_power[k]);
        mean /= static_cast<double>(ensemble.size());
        if (mean < kFloor) continue;  // censored
        xs.push_back(static_cast<double>(ensemble.front().shells[k]));
        ys.push_back(std::log2(mean));
    }
    if (xs.size() < 3)
        throw InsufficientShells("estimate_fourier_dim: fewer than 3 usable "
                                 "shells");
    auto fit = linear_fit(xs, ys);
    DimEstimate est;
    est.method = mode;
    est.slope = fit.slope;
    est.dimension = std::clamp(-fit.slope, 0.0, static_cast<double>(d));
    est.stderr_ = fit.stderr_slope;
    est.shell_lo = static_cast<int>(xs.front());
    est.shell_hi = static_cast<int>(xs.back());
    est.replicas = static_cast<int>(ensemble.size());
    return est;
}

double cube_energy(const MeasureState& state, int k) {
    const GridSpec& grid = state.grid;
    if ((1 << k) * 8 > grid.points())
        throw ScaleUnresolvable(k, grid.points(),
                                "cube_energy: cube side below 8 cells");
    const int m = grid.points();
    const int cells = m >> k;  // per axis per cube
    std::size_t n_cubes = 1;
    for (int a = 0; a < grid.dim(); ++a) n_cubes <<= k;
    std::vector<double> mass(n_cubes, 0.0);
    MultiIndex idx;
    const double cell_w = 1.0 / static_cast<double>(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        std::size_t cube = 0;
        for (int a = 0; a < grid.dim(); ++a) {
            int shifted = (idx[a] + m / 2) % m;  // align to [-1/2,1/2) tiling
            cube = (cube << k) + static_cast<std::size_t>(shifted / cells);
        }
        mass[cube] += state.density[i] * cell_w;
    }
    double e = 0.0;
    for (double v : mass) e += v * v;
    return e;
}

DimEstimate correlation_dim_from_energies(
    const std::vector<std::vector<double>>& per_replica, int k_lo, int d) {
    if (per_replica.empty())
        throw InsufficientShells("correlation_dim_from_energies: empty "
                                 "ensemble");
    const std::size_t n_scales = per_replica.front().size();
    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < n_scales; ++s) {
        double mean = 0.0;
        for (const auto& r : per_replica) mean += r[s];
        mean /= static_cast<double>(per_replica.size());
        if (mean <= 0.0) continue;
        xs.push_back(-static_cast<double>(k_lo + static_cast<int>(s)));
        ys.push_back(std::log2(mean));
    }
    if (xs.size() < 3)
        throw InsufficientShells("correlation_dim_from_energies: fewer than "
                                 "3 usable scales");
    auto fit = linear_fit(xs, ys);
    DimEstimate est;
    est.method = DimMethod::correlation;
    est.slope = fit.slope;
    est.dimension = std::clamp(fit.slope, 0.0, static_cast<double>(d));
    est.stderr_ = fit.stderr_slope;
    est.shell_lo = k_lo;
    est.shell_hi = k_lo + static_cast<int>(n_scales) - 1;
    est.replicas = static_cast<int>(per_replica.size());
    return est;
}

DimEstimate estimate_correlation_dim(std::span<const MeasureState> states) {
    if (states.empty())
        throw InsufficientShells("estimate_correlation_dim: empty ensemble");
    const GridSpec& grid = states.front().grid;
    const int k_max = grid.log2_points() - 3;  // 2^-k >= 8/M
    if (k_max < 3)
        throw InsufficientShells("estimate_correlation_dim: grid too small");
    std::vector<std::vector<double>> energies(states.size());
    for (std::size_t r = 0; r < states.size(); ++r)
        for (int k = 1; k <= k_max; ++k)
            energies[r].push_back(cube_energy(states[r], k));
    return correlation_dim_from_energies(energies, 1, grid.dim());
}

double fl_norm(const SpectrumTable& spec, double s, double q) {
    if (q < 1.0) throw Error("fl_norm: q must be >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.coeff.size(); ++i) {
        double n2 = spec.grid.freq_norm2(i);
        double w = std::pow(1.0 + n2, 0.5 * s * q);
        acc += w * std::pow(std::abs(spec.coeff[i]), q);
    }
    return std::pow(acc, 1.0 / q);
}

FlTrendReport fl_moment_trend(
    const std::vector<std::vector<double>>& fl_norms_per_level, double p) {
    FlTrendReport rep;
    for (const auto& level : fl_norms_per_level) {
        double mean = 0.0;
        for (double v : level) mean += std::pow(v, p);
        rep.level_means.push_back(level.empty()
                                      ? 0.0
                                      : mean / static_cast<double>(level.size()));
    }
    const std::size_t n = rep.level_means.size();
    if (n == 0) return rep;
    const std::size_t early = std::min<std::size_t>(3, n);
    for (std::size_t i = 0; i < early; ++i)
        rep.early_max = std::max(rep.early_max, rep.level_means[i]);
    const std::size_t tail = std::max<std::size_t>(1, n / 4);
    for (std::size_t i = n - tail; i < n; ++i)
        rep.late_mean += rep.level_means[i];
    rep.late_mean /= static_cast<double>(tail);
    rep.bounded = rep.late_mean <= 2.0 * rep.early_max;
    return rep;
}

}  // namespace gmc
