#include "torusgmc/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "torusgmc/errors.hpp"

namespace gmc {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fft::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Fft::Fft(const GridSpec& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
    std::vector<int> dims(static_cast<std::size_t>(grid.dim()), grid.points());
    // Planning with a scratch buffer; execution uses the new-array interface.
    // FFTW_UNALIGNED so any caller buffer is acceptable.
    cvector scratch(grid.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    plans_->fwd = fftw_plan_dft(grid.dim(), dims.data(), buf, buf,
                                FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->bwd = fftw_plan_dft(grid.dim(), dims.data(), buf, buf,
                                FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plans_->fwd || !plans_->bwd) throw Error("Fft: planning failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
    if (plans_->bwd) fftw_destroy_plan(plans_->bwd);
}

void Fft::forward(cvector& data) const {
    if (data.size() != grid_.size()) throw Error("Fft::forward: size mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_->fwd, buf, buf);
}

void Fft::backward(cvector& data) const {
    if (data.size() != grid_.size()) throw Error("Fft::backward: size mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_->bwd, buf, buf);
}

}  // namespace gmc
