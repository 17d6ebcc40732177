#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace gmc {

inline constexpr int kMaxDim = 4;

using MultiIndex = std::array<int, kMaxDim>;

// Regular grid on the torus [-1/2,1/2)^d with M points per axis, M a power
// of two. Grid point i (per axis) sits at t = wrap(i/M); the frequency
// lattice is n in [-M/2, M/2) per axis.
class GridSpec {
  public:
    GridSpec(int dim, int points_per_axis);

    int dim() const { return dim_; }
    int points() const { return points_; }
    int log2_points() const { return log2_points_; }
    double spacing() const { return 1.0 / points_; }
    std::size_t size() const { return size_; }

    // Largest level j whose kernel support 2^-j spans at least 4 cells.
    int max_level() const { return log2_points_ - 3; }

    // flat index <-> per-axis indices (row-major, axis 0 slowest)
    void unflatten(std::size_t flat, MultiIndex& idx) const;
    std::size_t flatten(const MultiIndex& idx) const;

    // torus coordinate in [-1/2,1/2) of per-axis index i
    double coord(int i) const {
        double t = static_cast<double>(i) / points_;
        return t < 0.5 ? t : t - 1.0;
    }

    // signed frequency of per-axis index i, in [-M/2, M/2)
    int freq(int i) const { return i < points_ / 2 ? i : i - points_; }

    // torus distance from the origin of the offset with flat index `flat`
    double torus_distance(std::size_t flat) const;

    // squared Euclidean norm of the frequency at flat index `flat`
    double freq_norm2(std::size_t flat) const;

    // flat index of the negated offset/frequency, (-i mod M) per axis
    std::size_t conjugate_index(std::size_t flat) const;

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && points_ == o.points_;
    }

  private:
    int dim_;
    int points_;
    int log2_points_;
    std::size_t size_;
};

}  // namespace gmc
