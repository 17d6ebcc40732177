#pragma once

#include <span>
#include <vector>

#include "torusgmc/fft.hpp"
#include "torusgmc/grid.hpp"
#include "torusgmc/profile.hpp"

namespace gmc {

// epsilon_j = j^-2 2^-j, the mollifier scale at level j
inline double mollifier_scale(int j) {
    return 1.0 / (static_cast<double>(j) * j * (1 << j));
}

// Per-level covariance on the torus grid, diagonalized by the DFT.
// eigenvalues are normalized so that sum_n lambda_n = sigma2 and
// real_samples(offset) = sum_n lambda_n e^{2 pi i n.offset/M}.
struct GridKernel {
    int level = 0;
    GridSpec grid;
    std::vector<double> real_samples;
    std::vector<double> eigenvalues;
    double sigma2 = 0.0;
    double epsilon = 0.0;
    double support_radius = 0.0;   // 3 * 2^-j
    double clamped_fraction = 0.0; // removed negative mass / total |mass|
};

// L_j(t) = int_1^2 Phi(2^j u |t|)/u du; exactly 0 for |t| >= 2^-j.
double eval_L(const RadialProfile& phi, int j, double radius);
double eval_L(const RadialProfile& phi, int j, std::span<const double> t);

// H_j sampled at all torus-wrapped grid offsets.
// Throws ScaleUnresolvable unless 2^-j >= 4/M.
std::vector<double> build_H_grid(const RadialProfile& phi, int j,
                                 const GridSpec& grid);

// w_n = |Q^(eps_j |n|)|^2 over the frequency lattice (flat layout).
std::vector<double> mollifier_spectrum(const RadialProfile& q, int j,
                                       const GridSpec& grid);

// K_j = H_j * P_j * P~_j, computed as a spectral product. Negative
// eigenvalues are clamped to 0 with budget accounting.
GridKernel build_K_spectral(const std::vector<double>& h_grid,
                            const std::vector<double>& mol,
                            const GridSpec& grid, int j, Fft& fft);

// Full pipeline for levels 1..levels.
std::vector<GridKernel> build_kernels(const RadialProfile& phi,
                                      const RadialProfile& q,
                                      const GridSpec& grid, int levels,
                                      Fft& fft);

// Octave increments of S(a) = sum_j K_j at torus distance 2^-a; each
// resolved increment should be log 2 up to the continuous remainder.
struct LogSumReport {
    std::vector<int> octaves;       // a values
    std::vector<double> sums;       // S(a)
    std::vector<double> increments; // S(a+1) - S(a), aligned with octaves[:-1]
    double max_deviation = 0.0;     // max |increment - log 2| over resolved a
};

LogSumReport kernel_log_sum_check(std::span<const GridKernel> kernels,
                                  const GridSpec& grid);

}  // namespace gmc
