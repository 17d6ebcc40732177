#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "torusgmc/grid.hpp"

namespace gmc {

using cvector = std::vector<std::complex<double>>;

// Thin wrapper around FFTW rank-d complex transforms for one GridSpec.
// Plan creation is serialized internally (FFTW planning is not thread safe);
// execution through distinct Fft instances is safe, so use one per worker.
class Fft {
  public:
    explicit Fft(const GridSpec& grid);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    const GridSpec& grid() const { return grid_; }

    // in-place, unnormalized: X_n = sum_k x_k e^{-2 pi i n.k/M}
    void forward(cvector& data) const;
    // in-place, unnormalized: x_k = sum_n X_n e^{+2 pi i n.k/M}
    void backward(cvector& data) const;

  private:
    GridSpec grid_;
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

}  // namespace gmc
