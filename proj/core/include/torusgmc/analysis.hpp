#pragma once

#include <span>
#include <string>
#include <vector>

#include "torusgmc/measure.hpp"

namespace gmc {

// D_{gamma,d}: d - gamma^2 below the crossover sqrt(2d)/2, else
// (sqrt(2d) - gamma)^2. Requires 0 < gamma < sqrt(2d).
double predicted_dimension(double gamma, int d);

// zeta(p) = 2d + gamma^2 - (2d/p + p gamma^2), defined for p in [1,2]
double zeta(double p, double gamma, int d);

// argmax of zeta over [1,2]: min(2, sqrt(2d)/gamma), also verified by
// golden-section search in the tests
double zeta_argmax(double gamma, int d);

// Feasible (p, q) window for the FL-moment trend at decay target tau.
struct FlWindow {
    double p = 2.0;
    double q = 2.0;
    bool feasible = false;  // -(p-1)d + dp/q + tau p/2 + p(p-1)g^2/2 < 0
};
FlWindow fl_window(double gamma, int d, double tau);

// Per dyadic frequency shell k (2^k <= |n| < 2^{k+1}), over lattice points
// below the aliasing guard and excluding n = 0.
struct ShellStats {
    std::vector<int> shells;
    std::vector<double> sup_power;   // sup |mu^(n)|^2
    std::vector<double> mean_power;  // mean |mu^(n)|^2
    std::vector<std::size_t> counts;
};

ShellStats shell_stats(const SpectrumTable& spec);

enum class DimMethod { fourier_sup, fourier_mean, correlation };

struct DimEstimate {
    DimMethod method = DimMethod::fourier_sup;
    double slope = 0.0;
    double dimension = 0.0;  // capped to [0, d]
    double stderr_ = 0.0;
    int shell_lo = 0, shell_hi = 0;
    int replicas = 0;
};

// Regression of log2(ensemble-mean shell statistic) against shell index.
// The two lowest shells are dropped by default (pre-asymptotic); shells with
// values below the censoring floor 1e-20 are dropped. Throws
// InsufficientShells when fewer than 3 usable shells remain. shell_lo and
// shell_hi restrict the regression range.
DimEstimate estimate_fourier_dim(std::span<const ShellStats> ensemble,
                                 DimMethod mode, int d, int shell_lo = 2,
                                 int shell_hi = 1 << 30);

// Correlation dimension from dyadic-cube energies sum_I mu(I)^2 at cube
// side 2^-k, ensemble-averaged before regression.
DimEstimate estimate_correlation_dim(std::span<const MeasureState> states);

// Same regression over precomputed per-replica energy vectors; entry k of
// each vector is the energy at cube scale k_lo + k.
DimEstimate correlation_dim_from_energies(
    const std::vector<std::vector<double>>& per_replica, int k_lo, int d);

// Dyadic-cube energy sum_{I in D_k} mu(I)^2 for one measure.
double cube_energy(const MeasureState& state, int k);

// Fourier-Lebesgue norm (sum_n <n>^{sq} |mu^(n)|^q)^{1/q} over the
// resolvable lattice, <n> = (1+|n|^2)^{1/2}. Requires q >= 1.
double fl_norm(const SpectrumTable& spec, double s, double q);

struct FlTrendReport {
    std::vector<double> level_means;  // E[ ||mu_m||^p ] per level m = 1..
    double early_max = 0.0;           // max of the first three level means
    double late_mean = 0.0;           // mean over the last quarter of levels
    bool bounded = false;             // late_mean <= 2 * early_max
};

// Boundedness verdict for per-level means of the p-th power of the FL norm.
FlTrendReport fl_moment_trend(
    const std::vector<std::vector<double>>& fl_norms_per_level, double p);

}  // namespace gmc
