#pragma once

#include "lolab/distribution.hpp"
#include "lolab/vectors.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lolab::smallball {

enum class Method { exact, monte_carlo };

/// p_eps(a) = sup_v P(|S - v| <= eps) for S = sum a_k xi_k.
struct SmallBallEstimate {
    double value = 0.0;
    Method method = Method::exact;
    double center = 0.0;
    double error_band = 0.0;
    std::optional<std::size_t> samples;
};

struct BoundReport {
    std::string name;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> inputs;
    std::optional<double> comparison;  // observed / bound
    double error_estimate = 0.0;
    std::vector<std::string> flags;

    bool has_flag(std::string_view f) const;
};

inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 26;

/// Exact p_eps by enumerating every outcome of a finite-support law and
/// sliding a closed window of width 2 eps over the sorted atoms. Throws
/// CapacityError when |support|^n exceeds `budget`.
SmallBallEstimate exact_small_ball(const CoefficientVector& a, double eps, const DistributionSpec& dist,
                                   std::uint64_t budget = default_enumeration_budget);

/// Empirical p_eps from `samples` draws; error_band is the 95% DKW half-width.
SmallBallEstimate monte_carlo_small_ball(const CoefficientVector& a, double eps, const DistributionSpec& dist,
                                         std::size_t samples, std::uint64_t seed);

/// Berry-Esseen small ball bound sqrt(2/pi) eps/|a|_2 + C1 B (|a|_3/|a|_2)^3.
BoundReport clt_bound(const CoefficientVector& a, double eps, double B, double C1 = 0.56);

/// |prod_k E exp(i a_k xi t)|.
double characteristic_modulus(const CoefficientVector& a, const DistributionSpec& dist, double t);

/// Raw integral of |phi(t/eps)| over [-pi/2, pi/2] (composite Simpson,
/// `panels` a multiple of 4). error_estimate is |S(panels) - S(panels/2)|.
/// The absolute constant of the inequality is left to the caller.
BoundReport esseen_integral(const CoefficientVector& a, double eps, const DistributionSpec& dist,
                            std::size_t panels = 4096);

/// f(t) = sum_k sin^2(a_k t / 2).
double halasz_functional(const CoefficientVector& a, double t);

struct HalaszMax {
    double value = 0.0;       // refined maximum M
    double argmax = 0.0;      // t in [0, pi/2] attaining it (f is even)
    double grid_value = 0.0;  // best grid point before refinement
    bool within_bounds = false;  // n/4 <= M <= n
};

/// M = max_{|t| <= pi/2} f(z t / eps). Requires |a_k| >= 1, z >= 1, 0 < eps < pi/4.
HalaszMax halasz_max(const CoefficientVector& a, double z, double eps);

struct LevelSetMeasure {
    double measure = 0.0;
    double error_bound = 0.0;
};

/// |T(m, r)| for T(m, r) = {|t| <= r : f(z t / eps) <= m}, midpoint grid of
/// `grid_res` cells. The error bound counts the cells whose classification the
/// Lipschitz constant (z / 2 eps) sum |a_k| cannot certify.
LevelSetMeasure level_set_measure(const CoefficientVector& a, double z, double eps, double m, double r,
                                  std::size_t grid_res);

struct RegularityCheck {
    double lhs = 0.0;    // |T(m, pi/2)|
    double rhs = 0.0;    // (2/l) |T(l^2 m, pi)|
    double slack = 0.0;  // combined grid error
    double halasz_max = 0.0;
    bool pass = false;
};

/// |T(m, pi/2)| <= (2/l) |T(l^2 m, pi)| under the hypothesis l^2 m <= M.
RegularityCheck regularity_check(const CoefficientVector& a, double z, double eps, double m, long l,
                                 std::size_t grid_res);

struct TheoremParams {
    double eps = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
    double B = 1.0;
    double K = 1.0;
    double C = 1.0;
    double c = 1.0;
    double t_max = 1e4;
};

/// C B K^3 / sqrt(kappa) (eps + 1/D_{2 alpha, 2 kappa}(a)) + C exp(-c alpha^2 kappa / B^2).
/// Hypotheses: 1 <= |a_k| <= K, 0 < alpha < 1/(6K), 0 < kappa < n. If D is not
/// found within t_max the 1/D term is set to 0 and the flag "lcd_not_found" is raised.
BoundReport theorem_bound(const CoefficientVector& a, const TheoremParams& p);

struct RestrictionCheck {
    double full = 0.0;
    double restricted = 0.0;
    bool pass = false;
};

/// p_eps(a) <= p_eps(P_sigma a), both sides exact.
RestrictionCheck restriction_check(const CoefficientVector& a, std::span<const std::size_t> sigma, double eps,
                                   const DistributionSpec& dist,
                                   std::uint64_t budget = default_enumeration_budget);

} // namespace lolab::smallball
