#include "spikelab/schedule.hpp"

#include <cmath>
#include <numbers>

#include "spikelab/errors.hpp"

namespace spikelab {

SpikeSchedule::SpikeSchedule(std::vector<cplx> spikes, Measure base_measure, GrowthKind growth)
    : spikes_(std::move(spikes)), base_measure_(std::move(base_measure)), growth_(growth),
      accumulation_index_(spikes_.size()) {
    validate();
}

SpikeSchedule SpikeSchedule::none(Measure base_measure) {
    return SpikeSchedule({}, std::move(base_measure));
}

std::vector<cplx> SpikeSchedule::harmonic_spikes(double offset, double scale, int count) {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) out.emplace_back(offset + scale / k, 0.0);
    return out;
}

std::vector<double> SpikeSchedule::real_spikes() const {
    std::vector<double> out;
    out.reserve(spikes_.size());
    for (const auto& s : spikes_) out.push_back(s.real());
    return out;
}

int SpikeSchedule::phi(int n) const {
    auto stored = static_cast<int>(spikes_.size());
    switch (growth_) {
        case GrowthKind::Fixed:
            return std::min(stored, n);
        case GrowthKind::Sqrt:
            return std::min({stored, n, static_cast<int>(std::floor(std::sqrt(n)))});
    }
    return 0;
}

double SpikeSchedule::growth_envelope(int n) const {
    switch (growth_) {
        case GrowthKind::Fixed:
            return static_cast<double>(spikes_.size()) / n;
        case GrowthKind::Sqrt:
            return std::sqrt(static_cast<double>(n)) / n;
    }
    return 0.0;
}

void SpikeSchedule::declare_accumulation(std::size_t from_index, double tol) {
    accumulation_index_ = from_index;
    accumulation_tol_ = tol;
    validate();
}

double SpikeSchedule::spike_distance(std::size_t i) const {
    const cplx& s = spikes_.at(i);
    SupportSet supp = base_measure_.support();
    if (base_measure_.carrier() == Carrier::UnitCircle) {
        double a = std::arg(s);
        if (a < 0) a += 2.0 * std::numbers::pi;
        return circle_distance(supp, a);
    }
    return supp.distance(s.real());
}

void SpikeSchedule::set_gue_bulk(bool on) {
    if (on && base_measure_.kind() != MeasureKind::Semicircle)
        throw PreconditionError("SpikeSchedule: GUE bulk requires a semicircle base measure");
    gue_bulk_ = on;
}

void SpikeSchedule::validate() const {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spikes_.size(); ++i) {
        double d = spike_distance(i);
        if (d <= 0) throw PreconditionError("SpikeSchedule: spike inside the base support");
        if (i >= accumulation_index_ && i > 0 && d > prev + 1e-12)
            throw PreconditionError("SpikeSchedule: spike distances increase past the declared index");
        prev = d;
    }
    if (!spikes_.empty() && std::isfinite(accumulation_tol_)) {
        if (spike_distance(spikes_.size() - 1) > accumulation_tol_)
            throw PreconditionError("SpikeSchedule: last spike misses the accumulation tolerance");
    }
}

}  // namespace spikelab
