#include "torusgmc/measure.hpp"

#include <numeric>

#include "torusgmc/errors.hpp"

namespace gmc {

namespace {
double grid_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}
}  // namespace

MeasureState MeasureState::uniform(const GridSpec& grid) {
    return MeasureState{.level = 0,
                        .grid = grid,
                        .density = std::vector<double>(grid.size(), 1.0),
                        .total_mass = 1.0,
                        .ledger = {}};
}

MeasureState advance(const MeasureState& state, const WeightField& weight,
                     double gamma) {
    if (weight.level != state.level + 1)
        throw LevelMismatch("advance: weight level " +
                            std::to_string(weight.level) +
                            " does not follow state level " +
                            std::to_string(state.level));
    if (weight.values.size() != state.density.size())
        throw Error("advance: size mismatch");
    MeasureState next{.level = state.level + 1,
                      .grid = state.grid,
                      .density = std::vector<double>(state.density.size()),
                      .total_mass = 0.0,
                      .ledger = state.ledger};
    for (std::size_t i = 0; i < state.density.size(); ++i)
        next.density[i] = state.density[i] * weight.values[i];
    next.total_mass = grid_mean(next.density);
    next.ledger.push_back({next.level, gamma, weight.sigma2});
    return next;
}

SpectrumTable spectrum(const MeasureState& state, Fft& fft) {
    SpectrumTable t{.grid = state.grid,
                    .coeff = cvector(state.grid.size()),
                    .alias_limit = state.grid.points() / 4};
    for (std::size_t i = 0; i < state.density.size(); ++i)
        t.coeff[i] = state.density[i];
    // z^n convention: positive exponent, so the unnormalized backward
    // transform divided by M^d gives mu^(n).
    fft.backward(t.coeff);
    const double inv_n = 1.0 / static_cast<double>(state.grid.size());
    for (auto& c : t.coeff) c *= inv_n;
    return t;
}

CascadeResult run_cascade(const std::vector<GridKernel>& kernels, double gamma,
                          int levels, std::uint64_t seed,
                          std::uint32_t replica,
                          const std::vector<int>& checkpoint_levels,
                          Fft& fft) {
    if (levels > static_cast<int>(kernels.size()))
        throw ScaleUnresolvable(levels, fft.grid().points(),
                                "run_cascade: not enough kernels for " +
                                    std::to_string(levels) + " levels");
    CascadeResult res{.checkpoints = {},
                      .final_state = MeasureState::uniform(fft.grid()),
                      .mass_path = {}};
    MeasureState state = MeasureState::uniform(fft.grid());
    auto want = checkpoint_levels.begin();
    while (want != checkpoint_levels.end() && *want < 1) {
        res.checkpoints.push_back(state);
        ++want;
    }
    for (int j = 1; j <= levels; ++j) {
        const GridKernel& k = kernels[static_cast<std::size_t>(j - 1)];
        SeedPath path{seed, replica, static_cast<std::uint32_t>(j)};
        FieldSample psi = sample_field(k, path, fft);
        WeightField x = lognormal_weight(psi, gamma, k);
        state = advance(state, x, gamma);
        res.mass_path.push_back(state.total_mass);
        while (want != checkpoint_levels.end() && *want == j) {
            res.checkpoints.push_back(state);
            ++want;
        }
    }
    res.final_state = std::move(state);
    return res;
}

}  // namespace gmc
