#pragma once

#include <memory>
#include <vector>

#include "torusgmc/quadrature.hpp"

namespace gmc {

enum class ProfileKind { phi, q };

// Smooth isotropic compactly supported radial profile on R^d.
//
// kind phi: normalized autocorrelation of the C-infinity bump
//   chi(r) = exp(-1/(1-(2r)^2)) on B(0,1/2), so supp = B(0,1), value 1 at 0,
//   and positive definiteness holds by construction (transform is |chi^|^2).
// kind q: the same autocorrelation normalized to unit integral instead,
//   Q = (chi * chi~) / (int chi)^2, so supp Q = B(0,1), Q >= 0, int Q = 1,
//   and Q^(rho) = (chi^(rho)/chi^(0))^2 >= 0 in closed form.
class RadialProfile {
  public:
    static RadialProfile build_phi(int dim, int oversample);
    static RadialProfile build_q(int dim, int oversample);

    ProfileKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double support_radius() const { return 1.0; }

    // radial value; exactly 0 for r >= 1
    double operator()(double r) const;

    // continuous isotropic Fourier transform at radial frequency rho,
    // tabulated on demand (q only; used for mollifier spectra)
    double fourier(double rho) const;

    // same transform by direct quadrature, Q^(rho) = (chi^(rho)/chi^(0))^2;
    // accurate to near machine precision (q only)
    double fourier_exact(double rho) const;

    // spline table backing fourier(); evaluates to 0 beyond its x_max.
    // Grab once and evaluate directly in hot loops.
    std::shared_ptr<const UniformSpline> fourier_spline(double rho_max) const;

    // sup_r (f(0)-f(r))/r^2 over the sampled table (phi only)
    double lipschitz_quadratic() const { return c_phi_; }

    struct Certificate {
        double min_eigenvalue;
        double max_eigenvalue;
        double value_at_zero;    // phi: Phi(0); q: integral over R^d
        double tail_max;         // max |value| sampled at r >= 1
    };
    const Certificate& certificate() const { return cert_; }

  private:
    RadialProfile() = default;
    void certify_positive_definite();
    void extend_fourier_table(double rho_max) const;

    ProfileKind kind_ = ProfileKind::phi;
    int dim_ = 1;
    int oversample_ = 64;
    UniformSpline table_;
    double c_phi_ = 0.0;
    double integral_ = 0.0;  // chi^(0) = int_{R^d} chi (q)
    Certificate cert_{};

    mutable std::shared_ptr<const UniformSpline> fourier_table_;
    mutable double fourier_rho_max_ = 0.0;
};

}  // namespace gmc
