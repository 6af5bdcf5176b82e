#include "lolab/interval_set.hpp"

#include "lolab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lolab {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
    for (const auto& iv : intervals)
        if (!(iv.lo <= iv.hi)) throw ArgumentError("interval with hi < lo");
    std::sort(intervals.begin(), intervals.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (const auto& iv : intervals) {
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi)
            intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
        else
            intervals_.push_back(iv);
    }
    for (const auto& iv : intervals_) measure_ += iv.length();
}

bool IntervalSet::contains(double t) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return t <= it->hi;
}

IntervalSet IntervalSet::clipped(double lo, double hi) const {
    std::vector<Interval> out;
    for (const auto& iv : intervals_) {
        const double a = std::max(lo, iv.lo);
        const double b = std::min(hi, iv.hi);
        if (a <= b) out.push_back({a, b});
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::mirrored() const {
    std::vector<Interval> out;
    out.reserve(intervals_.size());
    for (const auto& iv : intervals_) out.push_back({-iv.hi, -iv.lo});
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
    std::vector<Interval> all(intervals_.begin(), intervals_.end());
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return IntervalSet(std::move(all));
}

double IntervalSet::symmetric_difference_measure(const IntervalSet& other) const {
    // |A xor B| = |A| + |B| - 2 |A cap B|; the intersection by a merge walk.
    double inter = 0.0;
    std::size_t i = 0, j = 0;
    while (i < intervals_.size() && j < other.intervals_.size()) {
        const auto& a = intervals_[i];
        const auto& b = other.intervals_[j];
        const double lo = std::max(a.lo, b.lo);
        const double hi = std::min(a.hi, b.hi);
        if (lo < hi) inter += hi - lo;
        if (a.hi < b.hi)
            ++i;
        else
            ++j;
    }
    return measure_ + other.measure_ - 2.0 * inter;
}

} // namespace lolab
