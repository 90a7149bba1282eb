#include "spikelab/subordination.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "spikelab/errors.hpp"

namespace spikelab {

namespace {

// Damped fixed-point loop. Damping kicks in only when the step direction
// reverses, which is the oscillation signature of the composed map near the
// real axis.
template <typename Map>
cplx fixed_point(Map&& map, cplx w0, double tol, int max_iter, double damping,
                 const char* what) {
    cplx w = w0;
    cplx prev_step = 0.0;
    double residual = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        cplx w_next = map(w);
        cplx step = w_next - w;
        residual = std::abs(step);
        if (residual < tol * std::max(1.0, std::abs(w))) return w_next;
        double lambda = damping;
        if (prev_step != 0.0 && (step * std::conj(prev_step)).real() < 0.0)
            lambda = 0.5 * damping;
        w += lambda * step;
        prev_step = step;
    }
    throw IterationFailure(std::string(what) + ": fixed point did not converge", residual);
}

}  // namespace

SubordinationPair::SubordinationPair(ConvolutionType type, Measure mu, Measure nu,
                                     double tolerance, int max_iterations, double damping)
    : type_(type), mu_(std::move(mu)), nu_(std::move(nu)),
      tolerance_(tolerance), max_iterations_(max_iterations), damping_(damping) {
    if (tolerance_ <= 0) throw PreconditionError("SubordinationPair: tolerance must be > 0");
    if (damping_ <= 0 || damping_ > 1) throw PreconditionError("SubordinationPair: damping in (0,1]");
    if (type_ == ConvolutionType::MultiplicativeUnitary) {
        if (std::abs(mu_.first_moment()) < 1e-12 || std::abs(nu_.first_moment()) < 1e-12)
            throw PreconditionError("SubordinationPair: unitary convolution needs nonzero first moments");
    }
    if (type_ == ConvolutionType::MultiplicativePositive) {
        if (mu_.carrier() == Carrier::UnitCircle || nu_.carrier() == Carrier::UnitCircle)
            throw PreconditionError("SubordinationPair: positive convolution on a circle measure");
    }
}

OmegaValues SubordinationPair::iterate_additive(cplx z) const {
    if (z.imag() <= 0)
        throw DomainError("omegas: additive evaluation requires Im z > 0 (use the boundary ladder)");
    // omega1 is the fixed point of w -> z + h_nu(z + h_mu(w)).
    auto map = [&](cplx w) { return z + nu_.h_transform(z + mu_.h_transform(w)); };
    cplx w1 = fixed_point(map, z, tolerance_, max_iterations_, damping_, "additive subordination");
    OmegaValues out;
    out.omega1 = w1;
    out.omega2 = z + mu_.h_transform(w1);
    out.residual = std::abs(mu_.cauchy_transform(out.omega1) - nu_.cauchy_transform(out.omega2));
    return out;
}

OmegaValues SubordinationPair::iterate_multiplicative(cplx z) const {
    if (z == 0.0) throw DomainError("omegas: multiplicative evaluation at z = 0");
    if (type_ == ConvolutionType::MultiplicativeUnitary && std::abs(z) >= 1.0)
        throw DomainError("omegas: unitary evaluation requires |z| < 1");
    // omega1 is the fixed point of w -> z eta_nu(omega2)/omega2 with
    // omega2 = z eta_mu(w)/w; at the fixed point eta_mu(omega1) =
    // eta_nu(omega2) and omega1 omega2 = z eta(z).
    auto map = [&](cplx w) {
        cplx w2 = z * mu_.eta_transform(w) / w;
        return z * nu_.eta_transform(w2) / w2;
    };
    cplx w1 = fixed_point(map, z, tolerance_, max_iterations_, damping_,
                          "multiplicative subordination");
    OmegaValues out;
    out.omega1 = w1;
    out.omega2 = z * mu_.eta_transform(w1) / w1;
    out.residual = std::abs(mu_.eta_transform(out.omega1) - nu_.eta_transform(out.omega2));
    return out;
}

OmegaValues SubordinationPair::omegas(cplx z) const {
    return type_ == ConvolutionType::AdditiveReal ? iterate_additive(z)
                                                  : iterate_multiplicative(z);
}

cplx SubordinationPair::convolution_cauchy(cplx z) const {
    if (type_ != ConvolutionType::AdditiveReal) {
        // G via the moment series: G(z) = (1 + psi(1/z))/z.
        cplx eta = convolution_eta(1.0 / z);
        cplx psi = eta / (1.0 - eta);
        return (1.0 + psi) / z;
    }
    return mu_.cauchy_transform(omegas(z).omega1);
}

cplx SubordinationPair::convolution_eta(cplx z) const {
    if (type_ == ConvolutionType::AdditiveReal)
        throw PreconditionError("convolution_eta: additive pair has no eta transform");
    return mu_.eta_transform(omegas(z).omega1);
}

double SubordinationPair::density(double x, double im_offset) const {
    if (im_offset <= 0) throw PreconditionError("density: im_offset must be > 0");
    if (type_ == ConvolutionType::MultiplicativeUnitary) {
        // Density in the argument variable via the Poisson kernel.
        cplx z = std::polar(1.0 - im_offset, -x);
        cplx eta = convolution_eta(z);
        cplx psi = eta / (1.0 - eta);
        return (1.0 + 2.0 * psi.real()) / (2.0 * std::numbers::pi);
    }
    cplx g = convolution_cauchy(cplx(x, im_offset));
    return -g.imag() / std::numbers::pi;
}

namespace {

SupportSet support_scan(const SubordinationPair& sp, double lo, double hi,
                        double grid_step, double im_offset, double threshold) {
    std::vector<Interval> runs;
    bool in_run = false;
    double run_lo = 0.0, last_x = lo;
    for (double x = lo; x <= hi + 0.5 * grid_step; x += grid_step) {
        double d;
        try {
            d = sp.density(x, im_offset);
        } catch (const IterationFailure&) {
            d = 0.0;  // unresolved points are treated as outside the support
        }
        if (d > threshold) {
            if (!in_run) {
                in_run = true;
                run_lo = x;
            }
        } else if (in_run) {
            runs.push_back({run_lo, last_x});
            in_run = false;
        }
        last_x = x;
    }
    if (in_run) runs.push_back({run_lo, last_x});
    if (runs.empty())
        throw NumericalError("convolution_support: no density above threshold on the grid");
    return SupportSet(std::move(runs));
}

}  // namespace

SupportSet SubordinationPair::convolution_support(double grid_step, double im_offset,
                                                  double threshold) const {
    SupportSet sa = mu_.support(), sb = nu_.support();
    double lo, hi;
    switch (type_) {
        case ConvolutionType::AdditiveReal:
            lo = sa.lo() + sb.lo() - 1.0;
            hi = sa.hi() + sb.hi() + 1.0;
            break;
        case ConvolutionType::MultiplicativePositive:
            lo = std::max(0.0, sa.lo() * sb.lo() - 1.0);
            hi = sa.hi() * sb.hi() + 1.0;
            break;
        case ConvolutionType::MultiplicativeUnitary:
            lo = 0.0;
            hi = 2.0 * std::numbers::pi;
            break;
    }
    return support_scan(*this, lo, hi, grid_step, im_offset, threshold);
}

double SubordinationPair::omega_real_boundary(int side, double x, const SupportSet& K) const {
    if (side != 1 && side != 2) throw PreconditionError("omega_real_boundary: side must be 1 or 2");
    if (K.distance(x) <= 0) throw DomainError("omega_real_boundary: x inside the support");
    static const double ladder[] = {1e-3, 1e-5, 1e-7, 1e-9};
    bool have_prev = false;
    cplx prev = 0.0, last = 0.0;
    for (double delta : ladder) {
        cplx z = type_ == ConvolutionType::AdditiveReal ? cplx(x, delta)
                                                        : 1.0 / cplx(x, delta);
        OmegaValues ov = omegas(z);
        last = side == 1 ? ov.omega1 : ov.omega2;
        if (have_prev && std::abs(last - prev) < 1e-8) return last.real();
        prev = last;
        have_prev = true;
    }
    if (std::abs(last.imag()) < 1e-6 && std::abs(last - prev) < 1e-6) return last.real();
    throw BoundaryExtensionError("omega_real_boundary: ladder did not settle");
}

cplx SubordinationPair::omega_circle_boundary(int side, double arg) const {
    if (type_ != ConvolutionType::MultiplicativeUnitary)
        throw PreconditionError("omega_circle_boundary: not a unitary pair");
    static const double ladder[] = {1e-3, 1e-5, 1e-7};
    bool have_prev = false;
    cplx prev = 0.0, last = 0.0;
    for (double delta : ladder) {
        cplx z = std::polar(1.0 - delta, -arg);
        OmegaValues ov = omegas(z);
        last = side == 1 ? ov.omega1 : ov.omega2;
        if (have_prev && std::abs(last - prev) < 1e-7) return last;
        prev = last;
        have_prev = true;
    }
    if (std::abs(last - prev) < 1e-5) return last;
    throw BoundaryExtensionError("omega_circle_boundary: ladder did not settle");
}

SubordinationPair SubordinationPair::swapped() const {
    return SubordinationPair(type_, nu_, mu_, tolerance_, max_iterations_, damping_);
}

}  // namespace spikelab
