#include "torusgmc/pou.hpp"

#include <cmath>

#include "torusgmc/errors.hpp"

namespace gmc {

namespace {

double bump(double t) {
    t = std::abs(t);
    if (t >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

double wrap(double t) {
    t -= std::floor(t + 0.5);
    return t;  // [-1/2, 1/2)
}

}  // namespace

double theta(double t) {
    double v = bump(t);
    if (v == 0.0) return 0.0;
    double w = 0.0;
    double h0 = std::floor(t);
    for (int h = -1; h <= 1; ++h) w += bump(t - (h0 + h));
    return v / w;
}

PouFamily build_pou(int k, const GridSpec& grid, Fft& fft) {
    if (k < 1) throw Error("build_pou: scale must be >= 1");
    if ((std::int64_t(8) << k) > grid.points())
        throw ScaleUnresolvable(k, grid.points(),
                                "build_pou: window 2^-k spans fewer than 8 "
                                "cells (k=" + std::to_string(k) + ", M=" +
                                    std::to_string(grid.points()) + ")");
    const int m = grid.points();
    const double scale = std::ldexp(1.0, k);  // 2^k

    PouFamily pou{.scale = k,
                  .grid = grid,
                  .window = std::vector<double>(grid.size(), 0.0),
                  .cubes_per_axis = 1 << k,
                  .derivative_ratio = {},
                  .partition_max_deviation = 0.0,
                  .support_tail = 0.0};

    // per-axis window values rho_k(t_i) = theta(2^k t_i)
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) axis[static_cast<std::size_t>(i)] =
        theta(scale * grid.coord(i));

    MultiIndex idx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        double v = 1.0;
        bool outside = false;
        for (int a = 0; a < grid.dim(); ++a) {
            v *= axis[static_cast<std::size_t>(idx[a])];
            if (std::abs(grid.coord(idx[a])) > 1.0 / scale) outside = true;
        }
        pou.window[i] = v;
        if (outside) pou.support_tail = std::max(pou.support_tail, std::abs(v));
    }

    // partition-of-unity deviation: per-axis translate sums, then product
    std::vector<double> axis_sum(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double t = grid.coord(i);
        double s = 0.0;
        for (int h = -(1 << (k - 1)); h < (1 << (k - 1)); ++h) {
            double c = (h + 0.5) / scale;
            s += theta(scale * wrap(t - c));
        }
        axis_sum[static_cast<std::size_t>(i)] = s;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.unflatten(i, idx);
        double prod = 1.0;
        for (int a = 0; a < grid.dim(); ++a)
            prod *= axis_sum[static_cast<std::size_t>(idx[a])];
        pou.partition_max_deviation =
            std::max(pou.partition_max_deviation, std::abs(prod - 1.0));
    }

    // derivative-scaling certificates by spectral differentiation
    cvector base(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) base[i] = pou.window[i];
    fft.forward(base);
    const double inv_n = 1.0 / static_cast<double>(grid.size());

    auto ratio_for = [&](const std::vector<int>& alpha) {
        cvector buf(base);
        MultiIndex id2;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid.unflatten(i, id2);
            std::complex<double> f = inv_n;
            for (int a = 0; a < grid.dim(); ++a)
                for (int r = 0; r < alpha[static_cast<std::size_t>(a)]; ++r)
                    f *= std::complex<double>(0.0, 2.0 * M_PI * grid.freq(id2[a]));
            buf[i] *= f;
        }
        fft.backward(buf);
        double mx = 0.0;
        for (auto& c : buf) mx = std::max(mx, std::abs(c.real()));
        int order = 0;
        for (int a : alpha) order += a;
        return mx / std::pow(scale, order);
    };

    std::vector<int> alpha(static_cast<std::size_t>(grid.dim()), 0);
    pou.derivative_ratio[0] = ratio_for(alpha);
    for (int a = 0; a < grid.dim(); ++a) {
        std::fill(alpha.begin(), alpha.end(), 0);
        alpha[static_cast<std::size_t>(a)] = 1;
        auto& r1 = pou.derivative_ratio[1];
        r1 = std::max(r1, ratio_for(alpha));
        for (int b = a; b < grid.dim(); ++b) {
            std::fill(alpha.begin(), alpha.end(), 0);
            alpha[static_cast<std::size_t>(a)] += 1;
            alpha[static_cast<std::size_t>(b)] += 1;
            auto& r2 = pou.derivative_ratio[2];
            r2 = std::max(r2, ratio_for(alpha));
        }
    }
    return pou;
}

std::size_t cube_center_shift(const PouFamily& pou, int axis_center_index) {
    const int m = pou.grid.points();
    const int k = pou.scale;
    int shift = axis_center_index * (m >> k) + (m >> (k + 1));
    return static_cast<std::size_t>(((shift % m) + m) % m);
}

namespace {

// iterate cube center indices h in {-2^{k-1}, ..., 2^{k-1}-1}^d
bool next_cube(std::vector<int>& h, int k) {
    const int lo = -(1 << (k - 1)), hi = (1 << (k - 1));
    for (std::size_t a = h.size(); a-- > 0;) {
        if (++h[a] < hi) return true;
        h[a] = lo;
    }
    return false;
}

}  // namespace

std::vector<LocalizedCoeffs> localized_coeffs(
    const MeasureState& prev, const WeightField& weight, const PouFamily& pou,
    double tau, const std::vector<std::vector<int>>& tracked_n) {
    if (weight.level != prev.level + 1)
        throw LevelMismatch("localized_coeffs: weight level must be prev+1");
    if (pou.scale != weight.level)
        throw LevelMismatch("localized_coeffs: pou scale must equal weight "
                            "level");
    const GridSpec& grid = prev.grid;
    const int m = grid.points();
    const int k = pou.scale;
    const int b = m >> k;  // cells per cube side

    // centered fluctuation on the support of each window
    std::vector<double> factor(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        factor[i] = prev.density[i] * (weight.values[i] - 1.0);

    const double inv_n = 1.0 / static_cast<double>(grid.size());
    std::vector<LocalizedCoeffs> out;
    std::vector<int> h(static_cast<std::size_t>(grid.dim()),
                       -(1 << (k - 1)));
    MultiIndex off;
    do {
        LocalizedCoeffs lc;
        lc.scale = k;
        lc.cube = h;
        lc.freqs = tracked_n;
        lc.values.assign(tracked_n.size(), {0.0, 0.0});

        std::vector<std::size_t> shift(static_cast<std::size_t>(grid.dim()));
        for (int a = 0; a < grid.dim(); ++a)
            shift[static_cast<std::size_t>(a)] =
                cube_center_shift(pou, h[static_cast<std::size_t>(a)]);

        // window support: per-axis offsets in (-b, b) around the center
        std::vector<int> local(static_cast<std::size_t>(grid.dim()), -b);
        auto advance_local = [&]() {
            for (std::size_t a = local.size(); a-- > 0;) {
                if (++local[a] < b) return true;
                local[a] = -b;
            }
            return false;
        };
        do {
            std::size_t wflat = 0, gflat = 0;
            for (int a = 0; a < grid.dim(); ++a) {
                int o = local[static_cast<std::size_t>(a)];
                int wi = ((o % m) + m) % m;
                int gi = static_cast<int>(
                             (shift[static_cast<std::size_t>(a)] +
                              static_cast<std::size_t>(wi)) %
                             static_cast<std::size_t>(m));
                wflat = wflat * static_cast<std::size_t>(m) +
                        static_cast<std::size_t>(wi);
                gflat = gflat * static_cast<std::size_t>(m) +
                        static_cast<std::size_t>(gi);
            }
            double wv = pou.window[wflat];
            if (wv != 0.0) {
                double fv = factor[gflat] * wv * inv_n;
                if (fv != 0.0) {
                    grid.unflatten(gflat, off);
                    for (std::size_t t = 0; t < tracked_n.size(); ++t) {
                        double ph = 0.0;
                        for (int a = 0; a < grid.dim(); ++a)
                            ph += tracked_n[t][static_cast<std::size_t>(a)] *
                                  grid.coord(off[a]);
                        lc.values[t] += fv * std::polar(1.0, 2.0 * M_PI * ph);
                    }
                }
            }
        } while (advance_local());

        for (std::size_t t = 0; t < tracked_n.size(); ++t) {
            double n2 = 0.0;
            for (int v : tracked_n[t]) n2 += static_cast<double>(v) * v;
            lc.values[t] *= std::pow(1.0 + n2, 0.25 * tau);  // <n>^{tau/2}
        }
        out.push_back(std::move(lc));
    } while (next_cube(h, k));
    return out;
}

DecouplingReport decoupling_check(
    const MeasureState& prev, const WeightField& weight, const PouFamily& pou,
    double tau, const std::vector<std::vector<int>>& tracked_n, Fft& fft) {
    auto locals = localized_coeffs(prev, weight, pou, tau, tracked_n);
    const GridSpec& grid = prev.grid;

    cvector buf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        buf[i] = prev.density[i] * (weight.values[i] - 1.0);
    fft.backward(buf);
    const double inv_n = 1.0 / static_cast<double>(grid.size());

    DecouplingReport rep;
    rep.freqs = tracked_n;
    rep.lhs.assign(tracked_n.size(), {0.0, 0.0});
    rep.rhs.assign(tracked_n.size(), {0.0, 0.0});
    for (const auto& lc : locals)
        for (std::size_t t = 0; t < tracked_n.size(); ++t)
            rep.lhs[t] += lc.values[t];
    for (std::size_t t = 0; t < tracked_n.size(); ++t) {
        MultiIndex idx;
        double n2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            int n = tracked_n[t][static_cast<std::size_t>(a)];
            idx[a] = ((n % grid.points()) + grid.points()) % grid.points();
            n2 += static_cast<double>(n) * n;
        }
        std::complex<double> c = buf[grid.flatten(idx)] * inv_n;
        rep.rhs[t] = c * std::pow(1.0 + n2, 0.25 * tau);
    }
    // normwise relative error: per-coefficient relative error blows up on
    // near-zero coefficients where the identity error is pure roundoff
    double scale = 1e-300;
    for (const auto& v : rep.rhs) scale = std::max(scale, std::abs(v));
    for (std::size_t t = 0; t < tracked_n.size(); ++t)
        rep.max_rel_error = std::max(
            rep.max_rel_error, std::abs(rep.lhs[t] - rep.rhs[t]) / scale);
    return rep;
}

std::vector<std::vector<int>> default_tracked_frequencies(const GridSpec& grid) {
    std::vector<std::vector<int>> out;
    for (int k = 0; (2 << k) <= grid.points() / 4; ++k) {
        std::vector<int> lo(static_cast<std::size_t>(grid.dim()), 0);
        lo[0] = 1 << k;
        out.push_back(lo);
        std::vector<int> hi(static_cast<std::size_t>(grid.dim()), 0);
        hi[0] = (1 << (k + 1)) - 1;
        if (hi[0] != lo[0]) out.push_back(hi);
    }
    return out;
}

}  // namespace gmc
