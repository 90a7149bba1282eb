#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "spikelab/measure.hpp"

namespace spikelab {

enum class GrowthKind {
    Fixed,  // phi(N) = min(#spikes, N); models a fixed finite spike set
    Sqrt,   // phi(N) = min(#spikes, floor(sqrt(N)))
};

// The spike sequence attached to one side of a model, together with the
// growth function phi(N) controlling how many of them enter at size N and the
// base measure the non-spike eigenvalues follow.
class SpikeSchedule {
  public:
    SpikeSchedule(std::vector<cplx> spikes, Measure base_measure,
                  GrowthKind growth = GrowthKind::Fixed);

    static SpikeSchedule none(Measure base_measure);

    // Spikes offset + scale/k for k = 1..count (the affine-in-1/k family).
    static std::vector<cplx> harmonic_spikes(double offset, double scale, int count);

    const std::vector<cplx>& spikes() const { return spikes_; }
    std::vector<double> real_spikes() const;
    const Measure& base_measure() const { return base_measure_; }
    GrowthKind growth() const { return growth_; }

    int phi(int n) const;

    // phi(N)/N <= envelope(N); the declared rate witnessing phi(N)/N -> 0.
    double growth_envelope(int n) const;

    // Index beyond which dist(theta_i, Supp) must be non-increasing, and the
    // tolerance the last stored spike must reach. Defaults impose nothing
    // (finite spike prefix of a constant tail).
    void declare_accumulation(std::size_t from_index, double tol);

    // Distance of a spike to the support of the base measure.
    double spike_distance(std::size_t i) const;

    bool gue_bulk() const { return gue_bulk_; }
    void set_gue_bulk(bool on);

    void validate() const;

  private:
    std::vector<cplx> spikes_;
    Measure base_measure_;
    GrowthKind growth_;
    std::size_t accumulation_index_;
    double accumulation_tol_ = std::numeric_limits<double>::infinity();
    bool gue_bulk_ = false;
};

}  // namespace spikelab
