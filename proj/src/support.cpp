#include "spikelab/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spikelab/errors.hpp"

namespace spikelab {

SupportSet::SupportSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    for (const auto& iv : intervals_)
        if (iv.lo > iv.hi) throw PreconditionError("SupportSet: interval with lo > hi");
    normalize();
}

void SupportSet::normalize() {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& iv : intervals_) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    intervals_ = std::move(merged);
}

SupportSet SupportSet::fattened(double eps) const {
    if (eps < 0) throw PreconditionError("fattened: eps must be >= 0");
    std::vector<Interval> widened;
    widened.reserve(intervals_.size());
    for (const auto& iv : intervals_) widened.push_back({iv.lo - eps, iv.hi + eps});
    return SupportSet(std::move(widened));
}

void SupportSet::insert(Interval iv) {
    if (iv.lo > iv.hi) throw PreconditionError("insert: interval with lo > hi");
    intervals_.push_back(iv);
    normalize();
}

bool SupportSet::contains(double x) const {
    for (const auto& iv : intervals_)
        if (x >= iv.lo && x <= iv.hi) return true;
    return false;
}

double SupportSet::distance(double x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : intervals_) {
        if (x >= iv.lo && x <= iv.hi) return 0.0;
        d = std::min(d, std::min(std::abs(x - iv.lo), std::abs(x - iv.hi)));
    }
    return d;
}

std::vector<Interval> SupportSet::gaps(double box_lo, double box_hi) const {
    std::vector<Interval> out;
    if (box_lo >= box_hi) return out;
    double cursor = box_lo;
    for (const auto& iv : intervals_) {
        if (iv.lo > cursor) out.push_back({cursor, std::min(iv.lo, box_hi)});
        cursor = std::max(cursor, iv.hi);
        if (cursor >= box_hi) break;
    }
    if (cursor < box_hi) out.push_back({cursor, box_hi});
    // Drop degenerate slivers produced by clipping.
    std::erase_if(out, [](const Interval& g) { return g.hi - g.lo <= 0.0; });
    return out;
}

double circle_arg_distance(double a, double b) {
    const double tau = 2.0 * std::numbers::pi;
    double d = std::fmod(std::abs(a - b), tau);
    return std::min(d, tau - d);
}

double circle_distance(const SupportSet& s, double x) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : s.intervals()) {
        if (x >= iv.lo && x <= iv.hi) return 0.0;
        d = std::min(d, std::min(circle_arg_distance(x, iv.lo), circle_arg_distance(x, iv.hi)));
    }
    return d;
}

}  // namespace spikelab
