#pragma once

#include <complex>
#include <map>
#include <vector>

#include "torusgmc/measure.hpp"

namespace gmc {

// theta(t) = bump(t) / sum_h bump(t - h): smooth, supported in [-1,1],
// integer translates sum to 1. The sum in the denominator is locally finite
// (at most 3 terms).
double theta(double t);

// Scale-k smooth partition of unity: phi_k(t) = prod_l theta(2^k t_l)
// restricted to the torus, with one window per dyadic cube of D_k tiling
// [-1/2,1/2)^d. Centers c_I = 2^-k (h + 1/2) are grid-aligned for
// k < log2(M).
struct PouFamily {
    int scale = 0;
    GridSpec grid;
    std::vector<double> window;  // phi_k sampled at grid offsets
    // per-axis center indices run over {-2^{k-1}, ..., 2^{k-1}-1}
    int cubes_per_axis = 0;
    // certificate: max |D^alpha phi_k| / 2^{k |alpha|} keyed by |alpha| <= 2
    std::map<int, double> derivative_ratio;
    double partition_max_deviation = 0.0;  // max |sum_I phi_I - 1| on grid
    double support_tail = 0.0;             // max |phi_k| outside [-2^-k,2^-k]^d
};

PouFamily build_pou(int k, const GridSpec& grid, Fft& fft);

// Grid index shift (per axis) corresponding to cube center c_I.
std::size_t cube_center_shift(const PouFamily& pou, int axis_center_index);

struct LocalizedCoeffs {
    int scale = 0;
    std::vector<int> cube;               // per-axis center index
    std::vector<std::vector<int>> freqs; // tracked n
    std::vector<std::complex<double>> values;
};

// D_I^phi(n) = <n>^{tau/2} int phi_I(z) [prod_{j<k} X_j](z) (X_k(z)-1) z^n dm
// computed by grid quadrature; prev must be the level k-1 measure and weight
// the level k weight field.
std::vector<LocalizedCoeffs> localized_coeffs(
    const MeasureState& prev, const WeightField& weight, const PouFamily& pou,
    double tau, const std::vector<std::vector<int>>& tracked_n);

// Exact decoupling check: sum_I D_I^phi(n) vs <n>^{tau/2} (mu^_k - mu^_{k-1}).
struct DecouplingReport {
    std::vector<std::vector<int>> freqs;
    std::vector<std::complex<double>> lhs;  // sum over cubes
    std::vector<std::complex<double>> rhs;  // weighted increment coefficient
    // max |lhs - rhs| over the largest tracked |rhs| (normwise)
    double max_rel_error = 0.0;
};

DecouplingReport decoupling_check(const MeasureState& prev,
                                  const WeightField& weight,
                                  const PouFamily& pou, double tau,
                                  const std::vector<std::vector<int>>& tracked_n,
                                  Fft& fft);

// Default tracked frequencies: shell-minimal and shell-maximal axis points
// per dyadic shell below the aliasing guard.
std::vector<std::vector<int>> default_tracked_frequencies(const GridSpec& grid);

}  // namespace gmc
