#include "torusgmc/grid.hpp"

#include <cmath>

#include "torusgmc/errors.hpp"

namespace gmc {

GridSpec::GridSpec(int dim, int points_per_axis)
    : dim_(dim), points_(points_per_axis) {
    if (dim < 1 || dim > kMaxDim)
        throw Error("GridSpec: dimension must be in [1," +
                    std::to_string(kMaxDim) + "]");
    if (points_ < 8 || (points_ & (points_ - 1)) != 0)
        throw Error("GridSpec: points per axis must be a power of two >= 8");
    log2_points_ = 0;
    while ((1 << log2_points_) < points_) ++log2_points_;
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(points_);
}

void GridSpec::unflatten(std::size_t flat, MultiIndex& idx) const {
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % points_);
        flat /= points_;
    }
}

std::size_t GridSpec::flatten(const MultiIndex& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a)
        flat = flat * points_ + static_cast<std::size_t>(idx[a]);
    return flat;
}

double GridSpec::torus_distance(std::size_t flat) const {
    double s = 0.0;
    for (int a = dim_ - 1; a >= 0; --a) {
        int i = static_cast<int>(flat % points_);
        flat /= points_;
        double t = coord(i);
        s += t * t;
    }
    return std::sqrt(s);
}

double GridSpec::freq_norm2(std::size_t flat) const {
    double s = 0.0;
    for (int a = dim_ - 1; a >= 0; --a) {
        int i = static_cast<int>(flat % points_);
        flat /= points_;
        double n = freq(i);
        s += n * n;
    }
    return s;
}

std::size_t GridSpec::conjugate_index(std::size_t flat) const {
    MultiIndex idx;
    unflatten(flat, idx);
    for (int a = 0; a < dim_; ++a) idx[a] = (points_ - idx[a]) % points_;
    return flatten(idx);
}

}  // namespace gmc
