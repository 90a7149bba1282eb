#pragma once

#include <complex>

#include "spikelab/measure.hpp"
#include "spikelab/support.hpp"

namespace spikelab {

enum class ConvolutionType { AdditiveReal, MultiplicativePositive, MultiplicativeUnitary };

struct OmegaValues {
    cplx omega1;
    cplx omega2;
    double residual = 0.0;
    int iterations = 0;
};

// Numerical evaluators for the subordination functions omega1, omega2 of the
// free convolution of mu and nu, via damped fixed-point iteration of the
// composed h-map (additive) or eta-map (multiplicative).
//
// Convention: omega1 is attached to the first measure (the A-side limit), so
// that G(z) = G_mu(omega1(z)) additively and eta(z) = eta_mu(omega1(z))
// multiplicatively.
class SubordinationPair {
  public:
    SubordinationPair(ConvolutionType type, Measure mu, Measure nu,
                      double tolerance = 1e-12, int max_iterations = 10000,
                      double damping = 1.0);

    ConvolutionType type() const { return type_; }
    const Measure& mu() const { return mu_; }
    const Measure& nu() const { return nu_; }
    double tolerance() const { return tolerance_; }

    // Both subordination values at z. Additive: Im z > 0 required.
    // Multiplicative: z in the unit disk minus {0} (circle) or C \ R+ (half
    // line); z is the eta-coordinate argument, i.e. omega_k(z) with
    // v_k(rho) = omega_k(1/rho).
    OmegaValues omegas(cplx z) const;
    cplx omega1(cplx z) const { return omegas(z).omega1; }
    cplx omega2(cplx z) const { return omegas(z).omega2; }

    // G_{mu # nu}(z) = G_mu(omega1(z)) (additive case).
    cplx convolution_cauchy(cplx z) const;

    // eta_{mu x nu}(z) = eta_mu(omega1(z)) (multiplicative cases).
    cplx convolution_eta(cplx z) const;

    // Density of the additive convolution at x, read off from the boundary
    // values of the Cauchy transform at x + i*im_offset.
    double density(double x, double im_offset) const;

    // Support recovery by thresholding the density on a grid over the
    // Minkowski-sum enclosure of the two supports.
    SupportSet convolution_support(double grid_step = 1e-3, double im_offset = 1e-4,
                                   double threshold = 1e-3) const;

    // Real boundary value of omega1 (side = 1) or omega2 (side = 2) at x,
    // dist(x, K) > 0, via the imaginary-offset ladder.
    double omega_real_boundary(int side, double x, const SupportSet& K) const;

    // Boundary value of omega_k at the circle point exp(i*arg)^{-1} scaled
    // into the disk; returns the (approximately unit-modulus) limit.
    cplx omega_circle_boundary(int side, double arg) const;

    // Swap the two measures (omega1 <-> omega2).
    SubordinationPair swapped() const;

  private:
    OmegaValues iterate_additive(cplx z) const;
    OmegaValues iterate_multiplicative(cplx z) const;

    ConvolutionType type_;
    Measure mu_;
    Measure nu_;
    double tolerance_;
    int max_iterations_;
    double damping_;
};

}  // namespace spikelab
