#pragma once

#include <complex>
#include <vector>

#include "torusgmc/fft.hpp"
#include "torusgmc/sampler.hpp"

namespace gmc {

struct LevelRecord {
    int level = 0;
    double gamma = 0.0;
    double sigma2 = 0.0;
};

// Cascade approximation mu_m: nonnegative density against normalized Haar
// measure on the grid. total_mass is the grid mean of the density.
struct MeasureState {
    int level = 0;
    GridSpec grid;
    std::vector<double> density;
    double total_mass = 0.0;
    std::vector<LevelRecord> ledger;

    static MeasureState uniform(const GridSpec& grid);
};

// Pointwise product with a level (state.level + 1) weight field.
MeasureState advance(const MeasureState& state, const WeightField& weight,
                     double gamma);

// Fourier coefficients mu^(n) = M^-d sum_t density(t) e(n.t); the transform
// convention follows z^n with no conjugate. Coefficients with |n|_inf >=
// alias_limit are aliasing-suspect and excluded from estimation by default.
struct SpectrumTable {
    GridSpec grid;
    std::vector<std::complex<double>> coeff;
    int alias_limit = 0;  // M/4
};

SpectrumTable spectrum(const MeasureState& state, Fft& fft);

struct CascadeResult {
    std::vector<MeasureState> checkpoints;
    MeasureState final_state;
    std::vector<double> mass_path;  // total mass after each level 1..m
};

// Runs the cascade m levels deep with one weight field per level, seeded by
// (seed, replica, level). Checkpoint levels must be increasing.
CascadeResult run_cascade(const std::vector<GridKernel>& kernels, double gamma,
                          int levels, std::uint64_t seed,
                          std::uint32_t replica,
                          const std::vector<int>& checkpoint_levels, Fft& fft);

}  // namespace gmc
