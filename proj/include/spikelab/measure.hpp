#pragma once

#include <complex>
#include <vector>

#include "spikelab/support.hpp"

namespace spikelab {

using cplx = std::complex<double>;

enum class MeasureKind { Atomic, Semicircle, Empirical };
enum class Carrier { RealLine, PositiveHalfLine, UnitCircle };

struct Atom {
    cplx location;   // real carriers keep a zero imaginary part
    double weight;   // in (0, 1]
};

// A compactly supported probability measure on R, R+ or the unit circle.
// Immutable after construction; all transforms are pure functions.
class Measure {
  public:
    static Measure atomic(std::vector<Atom> atoms, Carrier carrier = Carrier::RealLine);
    static Measure point_mass(double location, Carrier carrier = Carrier::RealLine);
    // Semicircle law on [center - radius, center + radius]; the standard
    // variance-1 law is semicircle(0, 2).
    static Measure semicircle(double center, double radius);
    static Measure empirical(std::vector<double> samples, Carrier carrier = Carrier::RealLine);
    static Measure empirical_circle(std::vector<cplx> samples);

    MeasureKind kind() const { return kind_; }
    Carrier carrier() const { return carrier_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<cplx>& samples() const { return samples_; }

    SupportSet support() const;

    // G_m(z) = int 1/(z - t) dm(t). Throws DomainError for real z inside the
    // support. Branches are picked so that G(z) ~ 1/z at infinity.
    cplx cauchy_transform(cplx z) const;

    // F_m(z) = 1/G_m(z). Throws PoleError when G vanishes.
    cplx f_transform(cplx z) const;

    // h_m(z) = F_m(z) - z; the building block of the additive fixed point.
    cplx h_transform(cplx z) const;

    // psi_m(z) = int t z / (1 - t z) dm(t), the moment generating series used
    // by the multiplicative subordination.
    cplx psi_transform(cplx z) const;

    // eta_m(z) = psi(z) / (1 + psi(z)).
    cplx eta_transform(cplx z) const;

    // p-quantile for p in (0, 1); real carriers only.
    double quantile(double p) const;
    // Quantile on the unit circle, returned as a unit-modulus complex number.
    cplx circle_quantile(double p) const;

    // First moment (mean); used to check the nonzero-first-moment hypothesis
    // of the unitary multiplicative model.
    cplx first_moment() const;

    bool same_atoms(const Measure& other, double loc_tol = 1e-10) const;

  private:
    Measure() = default;
    void validate() const;

    MeasureKind kind_ = MeasureKind::Atomic;
    Carrier carrier_ = Carrier::RealLine;
    std::vector<Atom> atoms_;
    double center_ = 0.0;
    double radius_ = 0.0;
    std::vector<cplx> samples_;
};

// 0.5 * sum over the union of atom locations of |weight difference|.
// Both measures must be Atomic or Empirical.
double total_variation_distance(const Measure& a, const Measure& b);

}  // namespace spikelab
