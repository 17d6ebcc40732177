#pragma once

#include <span>
#include <vector>

#include "torusgmc/fft.hpp"
#include "torusgmc/kernel.hpp"
#include "torusgmc/rng.hpp"

namespace gmc {

struct FieldSample {
    int level = 0;
    GridSpec grid;
    std::vector<double> values;
    SeedPath seed_path;
};

// Exact stationary Gaussian synthesis: the covariance between grid points x
// and y is kernel.real_samples at offset x-y, by construction. Deterministic
// in (seed, replica, level).
FieldSample sample_field(const GridKernel& kernel, const SeedPath& path,
                         Fft& fft);

// Field whose Fourier coefficients are scaled by prod (2 pi i n_l)^{alpha_l}.
// Requires |alpha| <= d.
FieldSample spectral_derivative(const FieldSample& field,
                                std::span<const int> alpha, Fft& fft);

// E[|D^alpha psi_j|^2] = sum_n prod (2 pi n_l)^{2 alpha_l} lambda_n,
// evaluated exactly from the spectrum.
double derivative_second_moment(const GridKernel& kernel,
                                std::span<const int> alpha);

struct WeightField {
    int level = 0;
    std::vector<double> values;
    double sigma2 = 0.0;
};

// X_j = exp(gamma psi_j - gamma^2 sigma_j^2 / 2), using the exact grid
// variance so E[X_j] = 1 in distribution. Requires 0 < gamma < sqrt(2d).
WeightField lognormal_weight(const FieldSample& field, double gamma,
                             const GridKernel& kernel);

}  // namespace gmc
