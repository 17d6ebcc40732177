#pragma once

#include <stdexcept>
#include <string>

namespace gmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Positive-definiteness (or another certified property) of a constructed
// object failed its numerical check.
struct CertificationFailed : Error {
    double min_eigenvalue;
    explicit CertificationFailed(const std::string& what, double min_eig)
        : Error(what), min_eigenvalue(min_eig) {}
};

struct QuadratureUnstable : Error {
    using Error::Error;
};

// Requested scale 2^-j (or 2^-k) spans fewer than the minimum number of grid
// cells. Callers should cap the number of levels instead of proceeding.
struct ScaleUnresolvable : Error {
    int level;
    int grid_points;
    ScaleUnresolvable(int j, int m_points, const std::string& what)
        : Error(what), level(j), grid_points(m_points) {}
};

// Negative spectral mass removed during clamping exceeded the budget; the
// grid cannot resolve this level.
struct ClampBudgetExceeded : Error {
    double removed_fraction;
    ClampBudgetExceeded(const std::string& what, double frac)
        : Error(what), removed_fraction(frac) {}
};

struct GammaOutOfRange : Error {
    using Error::Error;
};

struct LevelMismatch : Error {
    using Error::Error;
};

struct InsufficientShells : Error {
    using Error::Error;
};

struct SchemaMismatch : Error {
    using Error::Error;
};

}  // namespace gmc
