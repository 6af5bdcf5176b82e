#pragma once

#include <span>
#include <vector>

namespace lolab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

/// Finite union of disjoint closed intervals, sorted, with cached measure.
/// Touching or overlapping inputs are merged on construction.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> intervals);

    std::span<const Interval> intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }
    double measure() const { return measure_; }

    bool contains(double t) const;
    IntervalSet clipped(double lo, double hi) const;
    IntervalSet mirrored() const;
    IntervalSet united(const IntervalSet& other) const;

    /// Lebesgue measure of the symmetric difference with `other`.
    double symmetric_difference_measure(const IntervalSet& other) const;

private:
    std::vector<Interval> intervals_;
    double measure_ = 0.0;
};

} // namespace lolab
