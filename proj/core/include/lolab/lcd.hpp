#pragma once

#include "lolab/interval_set.hpp"
#include "lolab/vectors.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lolab::lcd {

struct LcdParams {
    double alpha;
    double kappa;
    double t_max;
};

void validate(const LcdParams& p);

/// Number of coordinates that must be good: n - floor(kappa).
std::ptrdiff_t required_good(std::size_t n, double kappa);

/// Essential least common denominator D_{alpha,kappa}(a).
///
/// Sweeps t upward over the closed windows |t|a_k| - m| <= alpha, m >= 1, and
/// returns the first t at which at least n - floor(kappa) coordinates sit in a
/// window. Openings are processed before closings at equal t. Zero coordinates
/// are never good. Returns nullopt if the condition is not met on (0, t_max].
/// When kappa >= n every t > 0 qualifies and the infimum 0 is returned.
std::optional<double> essential_lcd(const CoefficientVector& a, const LcdParams& p);

/// I_{alpha,kappa}(a) intersected with [-y, y], computed exactly on [0, y] by
/// the same sweep with windows around every integer (including 0) and mirrored.
IntervalSet recurrence_set(const CoefficientVector& a, double alpha, double kappa, double y);

/// |I cap [-y, y]| / 2y.
double density(const IntervalSet& set, double y);

/// Checks 1 <= |a_k| <= K and alpha < 1/(6K). Throws PreconditionError naming
/// the violated bound. K defaults to max |a_k|.
double require_gap_hypotheses(const CoefficientVector& a, double alpha, std::optional<double> K = std::nullopt);

struct GapCheck {
    double t0 = 0.0;
    double probe = 0.0;          // t0 + 3 alpha
    bool probe_outside = false;  // probe not in I
    std::optional<double> t1;    // next point of I beyond the probe, within [0, y]
    bool spacing_ok = true;      // t1 - t0 >= D_{2 alpha, 2 kappa}
    bool pass = false;
};

struct GapAudit {
    std::optional<double> lcd2;  // D_{2 alpha, 2 kappa}(a); nullopt means beyond the search horizon
    double horizon = 0.0;
    std::vector<GapCheck> checks;
    bool all_pass = true;
};

/// Verifies the two gap properties for the left endpoint of every maximal
/// interval of I_{alpha,kappa}(a) cap [0, y].
GapAudit gap_audit(const CoefficientVector& a, double alpha, double kappa, double y);

struct DensityBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> lcd2;
    bool pass = false;
};

/// dens(I_{alpha,kappa}(a), y) <= 3 alpha (1/(2y) + 2/D_{2 alpha, 2 kappa}(a)).
///
/// D is searched up to 2y + 1. Beyond that horizon the recurrence set within
/// [-y, y] cannot contain a second cluster, and the 2/D term is dropped, which
/// only tightens the check.
DensityBoundCheck lcd_density_bound_check(const CoefficientVector& a, double alpha, double kappa, double y);

struct ProgressionReport {
    double lcd = 0.0;
    double gap = 0.0;
    long length = 0;
    std::vector<double> residuals;
    std::vector<std::size_t> exceptions;
};

/// Arithmetic progression {m/D : 1 <= m <= L} approximating |a_k| to within
/// alpha/D for all but kappa coordinates. nullopt if D is not found.
std::optional<ProgressionReport> extract_progression(const CoefficientVector& a, const LcdParams& p);

} // namespace lolab::lcd
