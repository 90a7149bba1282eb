#pragma once

#include <vector>

namespace spikelab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Ordered disjoint union of closed intervals on the real line. On the unit
// circle the same structure is used with endpoints read as arguments in
// [0, 2*pi).
class SupportSet {
  public:
    SupportSet() = default;
    explicit SupportSet(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }

    // Widen every interval by eps on each side, merging overlaps.
    SupportSet fattened(double eps) const;

    // Adds a (possibly degenerate) interval, re-normalizing.
    void insert(Interval iv);
    void insert_point(double x) { insert({x, x}); }

    bool contains(double x) const;
    // Distance from x to the set; 0 when inside. Infinity for the empty set.
    double distance(double x) const;

    double lo() const { return intervals_.front().lo; }
    double hi() const { return intervals_.back().hi; }

    // Connected components of [lo, hi] \ set, clipped to the given box.
    std::vector<Interval> gaps(double box_lo, double box_hi) const;

  private:
    void normalize();
    std::vector<Interval> intervals_;
};

// Arc distance between two arguments, accounting for wraparound on [0, 2*pi).
double circle_arg_distance(double a, double b);

// Distance from argument x to a SupportSet of arcs, with wraparound.
double circle_distance(const SupportSet& s, double x);

}  // namespace spikelab
