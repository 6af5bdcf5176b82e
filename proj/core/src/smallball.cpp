#include "lolab/smallball.hpp"

#include "lolab/errors.hpp"
#include "lolab/lcd.hpp"
#include "lolab/rng.hpp"
#include "lolab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace lolab::smallball {

bool BoundReport::has_flag(std::string_view f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

namespace {

struct Mass {
    double sum;
    double prob;
};

void require_eps(double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw ArgumentError("eps must be a finite value >= 0");
}

// Largest mass (or count) inside a closed window [s_i, s_i + width] anchored at an atom.
template <class Weight>
std::pair<double, double> best_window(const std::vector<double>& sorted, Weight weight, double width) {
    double best = 0.0, anchor = sorted.empty() ? 0.0 : sorted.front();
    double mass = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        while (j < sorted.size() && sorted[j] <= sorted[i] + width) mass += weight(j++);
        if (mass > best) {
            best = mass;
            anchor = sorted[i];
        }
        mass -= weight(i);
    }
    return {best, anchor};
}

} // namespace

SmallBallEstimate exact_small_ball(const CoefficientVector& a, double eps, const DistributionSpec& dist,
                                   std::uint64_t budget) {
    require_eps(eps);
    if (!dist.finite_support()) throw CapabilityError("exact_small_ball needs a finite-support distribution");
    const auto& atoms = dist.atoms();
    const double log_atoms = static_cast<double>(a.size()) * std::log2(static_cast<double>(atoms.size()));
    if (log_atoms > std::log2(static_cast<double>(budget)))
        throw CapacityError("exact enumeration needs 2^" + std::to_string(log_atoms) +
                            " atoms, over the budget of " + std::to_string(budget) +
                            "; use monte_carlo_small_ball instead");

    double max_atom = 0.0;
    std::vector<Mass> cur{{0.0, 1.0}};
    double scale = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        std::vector<Mass> next;
        next.reserve(cur.size() * atoms.size());
        const double off = dist.offset(k);
        for (const auto& at : atoms) {
            const double step = a[k] * (at.value + off);
            max_atom = std::max(max_atom, std::abs(step));
            for (const auto& c : cur) next.push_back({c.sum + step, c.prob * at.prob});
        }
        scale += max_atom;
        max_atom = 0.0;
        std::sort(next.begin(), next.end(), [](const Mass& x, const Mass& y) { return x.sum < y.sum; });
        cur.clear();
        for (const auto& m : next) {
            if (!cur.empty() && cur.back().sum == m.sum)
                cur.back().prob += m.prob;
            else
                cur.push_back(m);
        }
    }

    std::vector<double> sums(cur.size());
    std::transform(cur.begin(), cur.end(), sums.begin(), [](const Mass& m) { return m.sum; });
    // Sums that coincide in exact arithmetic may differ by accumulated rounding.
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(a.size() + 1) * scale;
    const auto [best, anchor] = best_window(sums, [&](std::size_t i) { return cur[i].prob; }, 2.0 * eps + slack);

    SmallBallEstimate est;
    est.value = std::clamp(best, 0.0, 1.0);
    est.method = Method::exact;
    est.center = anchor + eps;
    est.error_band = 0.0;
    return est;
}

SmallBallEstimate monte_carlo_small_ball(const CoefficientVector& a, double eps, const DistributionSpec& dist,
                                         std::size_t samples, std::uint64_t seed) {
    require_eps(eps);
    if (samples < 100) throw ArgumentError("monte_carlo_small_ball needs at least 100 samples");
    Stream stream(derive_seed(seed, "small-ball", 0));
    std::vector<double> sums(samples);
    for (auto& s : sums) {
        double acc = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * dist.sample(stream, k);
        s = acc;
    }
    std::sort(sums.begin(), sums.end());
    const auto [best, anchor] = best_window(sums, [](std::size_t) { return 1.0; }, 2.0 * eps);

    SmallBallEstimate est;
    est.value = best / static_cast<double>(samples);
    est.method = Method::monte_carlo;
    est.center = anchor + eps;
    est.error_band = dkw_band(samples);
    est.samples = samples;
    return est;
}

BoundReport clt_bound(const CoefficientVector& a, double eps, double B, double C1) {
    require_eps(eps);
    const auto& nm = a.norms();
    if (nm.l2 == 0.0) throw ArgumentError("clt_bound: coefficient vector must be nonzero");
    const double ratio = nm.l3 / nm.l2;
    BoundReport r;
    r.name = "clt_bound";
    r.value = std::sqrt(2.0 / std::numbers::pi) * eps / nm.l2 + C1 * B * ratio * ratio * ratio;
    r.inputs = {{"eps", eps}, {"B", B}, {"C1", C1}};
    return r;
}

double characteristic_modulus(const CoefficientVector& a, const DistributionSpec& dist, double t) {
    switch (dist.family()) {
    case Family::rademacher: {
        double prod = 1.0;
        for (double ak : a.values()) prod *= std::abs(std::cos(ak * t));
        return prod;
    }
    case Family::gaussian: {
        const double l2 = a.norms().l2;
        return std::exp(-0.5 * l2 * l2 * t * t);
    }
    case Family::discrete: {
        double prod = 1.0;
        for (double ak : a.values()) {
            std::complex<double> phi{0.0, 0.0};
            for (const auto& at : dist.atoms()) phi += at.prob * std::polar(1.0, ak * at.value * t);
            prod *= std::abs(phi);
        }
        return std::min(prod, 1.0);
    }
    }
    throw CapabilityError("characteristic_modulus: unsupported distribution family");
}

namespace {

double simpson(const CoefficientVector& a, const DistributionSpec& dist, double eps, std::size_t panels) {
    const double lo = -std::numbers::pi / 2.0;
    const double h = std::numbers::pi / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t i = 0; i <= panels; ++i) {
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * characteristic_modulus(a, dist, (lo + static_cast<double>(i) * h) / eps);
    }
    return acc * h / 3.0;
}

} // namespace

BoundReport esseen_integral(const CoefficientVector& a, double eps, const DistributionSpec& dist, std::size_t panels) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ArgumentError("esseen_integral: eps must be > 0");
    if (panels < 4 || panels % 4 != 0) throw ArgumentError("esseen_integral: panels must be a positive multiple of 4");
    BoundReport r;
    r.name = "esseen_integral";
    r.value = simpson(a, dist, eps, panels);
    r.error_estimate = std::abs(r.value - simpson(a, dist, eps, panels / 2));
    r.inputs = {{"eps", eps}, {"quad_points", static_cast<double>(panels)}};
    return r;
}

double halasz_functional(const CoefficientVector& a, double t) {
    double f = 0.0;
    for (double ak : a.values()) {
        const double s = std::sin(0.5 * ak * t);
        f += s * s;
    }
    return f;
}

namespace {

double lipschitz(const CoefficientVector& a, double z, double eps) { return z / (2.0 * eps) * a.norms().l1; }

} // namespace

HalaszMax halasz_max(const CoefficientVector& a, double z, double eps) {
    for (double ak : a.values())
        if (std::abs(ak) < 1.0) throw PreconditionError("halasz_max: hypothesis |a_k| >= 1 violated");
    if (!(z >= 1.0)) throw PreconditionError("halasz_max: hypothesis z >= 1 violated");
    if (!(eps > 0.0 && eps < std::numbers::pi / 4.0)) throw PreconditionError("halasz_max: hypothesis 0 < eps < pi/4 violated");

    const double half = std::numbers::pi / 2.0;
    const auto g = [&](double t) { return halasz_functional(a, z * t / eps); };
    const double step = std::min(half / 1000.0, 1e-3 / lipschitz(a, z, eps));
    const auto cells = static_cast<std::size_t>(std::ceil(half / step));
    const double h = half / static_cast<double>(cells);

    std::vector<double> values(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) values[i] = g(static_cast<double>(i) * h);

    // Refine around the best few grid local maxima (f is even, so [0, pi/2] suffices).
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i <= cells; ++i) {
        const bool left = i == 0 || values[i] >= values[i - 1];
        const bool right = i == cells || values[i] >= values[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    if (peaks.size() > 8) peaks.resize(8);

    HalaszMax r;
    r.grid_value = values[peaks.front()];
    r.value = r.grid_value;
    r.argmax = static_cast<double>(peaks.front()) * h;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i : peaks) {
        double lo = std::max(0.0, (static_cast<double>(i) - 1.0) * h);
        double hi = std::min(half, (static_cast<double>(i) + 1.0) * h);
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = g(x1), f2 = g(x2);
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = g(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = g(x1);
            }
        }
        for (double t : {x1, x2, lo, hi}) {
            const double v = g(t);
            if (v > r.value) {
                r.value = v;
                r.argmax = t;
            }
        }
    }
    const double n = static_cast<double>(a.size());
    r.within_bounds = n / 4.0 <= r.value && r.value <= n + 1e-12;
    return r;
}

LevelSetMeasure level_set_measure(const CoefficientVector& a, double z, double eps, double m, double r,
                                  std::size_t grid_res) {
    if (!(m >= 0.0)) throw ArgumentError("level_set_measure: m must be >= 0");
    if (!(r > 0.0)) throw ArgumentError("level_set_measure: r must be > 0");
    if (!(eps > 0.0) || !(z > 0.0)) throw ArgumentError("level_set_measure: z and eps must be > 0");
    if (grid_res == 0) throw ArgumentError("level_set_measure: grid_res must be positive");
    const double h = 2.0 * r / static_cast<double>(grid_res);
    const double band = lipschitz(a, z, eps) * h / 2.0;
    std::size_t inside = 0, uncertain = 0;
    for (std::size_t i = 0; i < grid_res; ++i) {
        const double t = -r + (static_cast<double>(i) + 0.5) * h;
        const double v = halasz_functional(a, z * t / eps);
        if (v <= m) ++inside;
        if (std::abs(v - m) <= band) ++uncertain;
    }
    return {h * static_cast<double>(inside), h * static_cast<double>(uncertain)};
}

RegularityCheck regularity_check(const CoefficientVector& a, double z, double eps, double m, long l,
                                 std::size_t grid_res) {
    if (l < 1) throw PreconditionError("regularity_check: l must be >= 1");
    if (!(m >= 0.0)) throw ArgumentError("regularity_check: m must be >= 0");
    RegularityCheck r;
    r.halasz_max = halasz_max(a, z, eps).value;
    const double ld = static_cast<double>(l);
    if (ld * ld * m > r.halasz_max) throw PreconditionError("regularity_check: hypothesis l^2 m <= M violated");
    const auto small = level_set_measure(a, z, eps, m, std::numbers::pi / 2.0, grid_res);
    const auto large = level_set_measure(a, z, eps, ld * ld * m, std::numbers::pi, 2 * grid_res);
    r.lhs = small.measure;
    r.rhs = 2.0 / ld * large.measure;
    r.slack = small.error_bound + 2.0 / ld * large.error_bound;
    r.pass = r.lhs <= r.rhs + r.slack;
    return r;
}

BoundReport theorem_bound(const CoefficientVector& a, const TheoremParams& p) {
    require_eps(p.eps);
    lcd::require_gap_hypotheses(a, p.alpha, p.K);
    if (!(p.kappa > 0.0 && p.kappa < static_cast<double>(a.size())))
        throw PreconditionError("theorem_bound: hypothesis 0 < kappa < n violated");
    if (!(p.B > 0.0)) throw ArgumentError("theorem_bound: B must be > 0");

    BoundReport r;
    r.name = "theorem_bound";
    const auto d = lcd::essential_lcd(a, {2.0 * p.alpha, 2.0 * p.kappa, p.t_max});
    double inv_d = 0.0;
    if (!d) {
        r.flags.emplace_back("lcd_not_found");
    } else if (*d == 0.0) {
        r.flags.emplace_back("lcd_zero");
        inv_d = std::numeric_limits<double>::infinity();
    } else {
        inv_d = 1.0 / *d;
    }
    const double k3 = p.K * p.K * p.K;
    r.value = p.C * p.B * k3 / std::sqrt(p.kappa) * (p.eps + inv_d) +
              p.C * std::exp(-p.c * p.alpha * p.alpha * p.kappa / (p.B * p.B));
    r.inputs = {{"eps", p.eps}, {"alpha", p.alpha}, {"kappa", p.kappa}, {"B", p.B}, {"K", p.K},
                {"C", p.C},     {"c", p.c},         {"t_max", p.t_max}, {"lcd", d.value_or(std::nan(""))}};
    return r;
}

RestrictionCheck restriction_check(const CoefficientVector& a, std::span<const std::size_t> sigma, double eps,
                                   const DistributionSpec& dist, std::uint64_t budget) {
    RestrictionCheck r;
    r.full = exact_small_ball(a, eps, dist, budget).value;
    r.restricted = sigma.empty() ? 1.0
                                 : exact_small_ball(a.restricted(sigma), eps, dist.restricted(sigma), budget).value;
    r.pass = r.full <= r.restricted + 1e-12;
    return r;
}

} // namespace lolab::smallball
