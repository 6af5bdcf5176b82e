#include "lolab/lcd.hpp"

#include "lolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace lolab::lcd {

namespace {

enum class Kind : int { open = 0, close = 1 };

struct Event {
    double t;
    Kind kind;
    std::size_t coord;
    long m;
};

// Earlier time first; at equal time openings before closings (closed windows).
struct Later {
    bool operator()(const Event& x, const Event& y) const {
        if (x.t != y.t) return x.t > y.t;
        return static_cast<int>(x.kind) > static_cast<int>(y.kind);
    }
};

bool event_less(const Event& x, const Event& y) { return Later{}(y, x); }

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must be in (0,1)");
}

} // namespace

void validate(const LcdParams& p) {
    require_alpha(p.alpha);
    if (!(p.kappa >= 0.0) || !std::isfinite(p.kappa)) throw ArgumentError("kappa must be >= 0");
    if (!(p.t_max > 0.0) || !std::isfinite(p.t_max)) throw ArgumentError("t_max must be positive");
}

std::ptrdiff_t required_good(std::size_t n, double kappa) {
    return static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(std::floor(kappa));
}

std::optional<double> essential_lcd(const CoefficientVector& a, const LcdParams& p) {
    validate(p);
    const std::ptrdiff_t need = required_good(a.size(), p.kappa);
    if (need <= 0) return 0.0;

    // With alpha >= 1/2 consecutive windows overlap, so once open a coordinate stays good.
    const bool windows_merge = p.alpha >= 0.5;
    std::priority_queue<Event, std::vector<Event>, Later> events;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double mag = std::abs(a[k]);
        if (mag == 0.0) continue;
        const double t = (1.0 - p.alpha) / mag;
        if (t <= p.t_max) events.push({t, Kind::open, k, 1});
    }

    std::ptrdiff_t good = 0;
    while (!events.empty()) {
        const Event e = events.top();
        events.pop();
        if (e.t > p.t_max) break;
        const double mag = std::abs(a[e.coord]);
        if (e.kind == Kind::open) {
            if (++good >= need) return e.t;
            if (!windows_merge) events.push({(static_cast<double>(e.m) + p.alpha) / mag, Kind::close, e.coord, e.m});
        } else {
            --good;
            const double next = (static_cast<double>(e.m + 1) - p.alpha) / mag;
            if (next <= p.t_max) events.push({next, Kind::open, e.coord, e.m + 1});
        }
    }
    return std::nullopt;
}

IntervalSet recurrence_set(const CoefficientVector& a, double alpha, double kappa, double y) {
    require_alpha(alpha);
    if (!(kappa >= 0.0)) throw ArgumentError("kappa must be >= 0");
    if (!(y > 0.0) || !std::isfinite(y)) throw ArgumentError("y must be positive");
    const std::ptrdiff_t need = required_good(a.size(), kappa);
    if (need <= 0) return IntervalSet({{-y, y}});

    std::vector<Event> events;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double mag = std::abs(a[k]);
        if (mag == 0.0 || alpha >= 0.5) {
            events.push_back({0.0, Kind::open, k, 0});
            events.push_back({y, Kind::close, k, 0});
            continue;
        }
        const auto last = static_cast<long>(std::floor(y * mag + alpha));
        for (long m = 0; m <= last; ++m) {
            const double lo = std::max(0.0, (static_cast<double>(m) - alpha) / mag);
            const double hi = std::min(y, (static_cast<double>(m) + alpha) / mag);
            if (lo > hi) continue;
            events.push_back({lo, Kind::open, k, m});
            events.push_back({hi, Kind::close, k, m});
        }
    }
    std::sort(events.begin(), events.end(), event_less);

    std::vector<Interval> regions;
    std::ptrdiff_t good = 0;
    double start = 0.0;
    for (const auto& e : events) {
        if (e.kind == Kind::open) {
            if (++good == need) start = e.t;
        } else {
            if (good-- == need) regions.push_back({start, e.t});
        }
    }
    IntervalSet half(std::move(regions));
    return half.united(half.mirrored());
}

double density(const IntervalSet& set, double y) {
    if (!(y > 0.0)) throw ArgumentError("density: y must be positive");
    return set.clipped(-y, y).measure() / (2.0 * y);
}

double require_gap_hypotheses(const CoefficientVector& a, double alpha, std::optional<double> K) {
    const auto [lo, hi] = std::minmax_element(a.values().begin(), a.values().end(),
                                              [](double x, double y) { return std::abs(x) < std::abs(y); });
    const double kmax = K.value_or(std::abs(*hi));
    if (std::abs(*lo) < 1.0) throw PreconditionError("hypothesis 1 <= |a_k| violated: min |a_k| = " + std::to_string(std::abs(*lo)));
    if (std::abs(*hi) > kmax) throw PreconditionError("hypothesis |a_k| <= K violated: max |a_k| = " + std::to_string(std::abs(*hi)));
    if (!(alpha > 0.0) || !(alpha < 1.0 / (6.0 * kmax)))
        throw PreconditionError("hypothesis 0 < alpha < 1/(6K) violated: alpha = " + std::to_string(alpha) +
                                ", 1/(6K) = " + std::to_string(1.0 / (6.0 * kmax)));
    return kmax;
}

GapAudit gap_audit(const CoefficientVector& a, double alpha, double kappa, double y) {
    require_gap_hypotheses(a, alpha);
    if (!(kappa >= 0.0)) throw ArgumentError("kappa must be >= 0");
    if (!(y > 0.0)) throw ArgumentError("y must be positive");

    GapAudit audit;
    audit.horizon = y + 3.0 * alpha + 1.0;
    const IntervalSet extended = recurrence_set(a, alpha, kappa, audit.horizon);
    const IntervalSet within = extended.clipped(0.0, y);
    // Every t1 - t0 we look at is <= y < horizon, so a miss means D exceeds all of them.
    audit.lcd2 = essential_lcd(a, {2.0 * alpha, 2.0 * kappa, audit.horizon});

    const auto ivs = extended.intervals();
    for (const auto& iv : within.intervals()) {
        GapCheck c;
        c.t0 = iv.lo;
        c.probe = c.t0 + 3.0 * alpha;
        c.probe_outside = !extended.contains(c.probe);
        auto next = std::find_if(ivs.begin(), ivs.end(), [&](const Interval& j) { return j.lo > c.probe; });
        if (next != ivs.end() && next->lo <= y) {
            c.t1 = next->lo;
            const double gap = *c.t1 - c.t0;
            c.spacing_ok = audit.lcd2.has_value() && gap >= *audit.lcd2 - 1e-10 * std::max(1.0, *c.t1);
        }
        c.pass = c.probe_outside && c.spacing_ok;
        audit.all_pass = audit.all_pass && c.pass;
        audit.checks.push_back(c);
    }
    return audit;
}

DensityBoundCheck lcd_density_bound_check(const CoefficientVector& a, double alpha, double kappa, double y) {
    require_gap_hypotheses(a, alpha);
    if (!(kappa >= 0.0)) throw ArgumentError("kappa must be >= 0");
    if (!(y > 0.0)) throw ArgumentError("y must be positive");

    DensityBoundCheck r;
    r.lcd2 = essential_lcd(a, {2.0 * alpha, 2.0 * kappa, 2.0 * y + 1.0});
    r.lhs = density(recurrence_set(a, alpha, kappa, y), y);
    double inv_d = 0.0;
    if (r.lcd2) inv_d = *r.lcd2 > 0.0 ? 1.0 / *r.lcd2 : std::numeric_limits<double>::infinity();
    r.rhs = 3.0 * alpha * (1.0 / (2.0 * y) + 2.0 * inv_d);
    r.pass = r.lhs <= r.rhs + 1e-12;
    return r;
}

std::optional<ProgressionReport> extract_progression(const CoefficientVector& a, const LcdParams& p) {
    validate(p);
    if (required_good(a.size(), p.kappa) <= 0) throw ArgumentError("extract_progression: kappa must be < n");
    const auto d = essential_lcd(a, p);
    if (!d) return std::nullopt;

    ProgressionReport r;
    r.lcd = *d;
    r.gap = 1.0 / r.lcd;
    r.length = static_cast<long>(std::ceil(r.lcd * a.norms().linf + p.alpha));
    const double tol = p.alpha / r.lcd;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double mag = std::abs(a[k]);
        const long m = std::clamp(std::lround(mag * r.lcd), 1L, std::max(1L, r.length));
        const double res = std::abs(mag - static_cast<double>(m) / r.lcd);
        r.residuals.push_back(res);
        // Coordinates that opened exactly at D sit on the boundary up to rounding.
        if (res > tol + 1e-12 * std::max(1.0, mag)) r.exceptions.push_back(k);
    }
    return r;
}

} // namespace lolab::lcd
