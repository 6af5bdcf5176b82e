#include "lolab/randmat.hpp"

#include "lolab/errors.hpp"
#include "lolab/lcd.hpp"
#include "lolab/rng.hpp"
#include "lolab/vectors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lolab::randmat {

Matrix sample_matrix(const Ensemble& e, std::uint64_t seed) {
    if (e.rows == 0 || e.cols == 0) throw ArgumentError("ensemble needs rows >= 1 and cols >= 1");
    Stream stream(seed);
    Matrix A(static_cast<Eigen::Index>(e.rows), static_cast<Eigen::Index>(e.cols));
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = e.entry.sample(stream, static_cast<std::size_t>(j));
    return A;
}

namespace {

void require_finite(const Matrix& A) {
    if (!A.allFinite()) throw ArgumentError("matrix entries must be finite");
}

} // namespace

SingularSpectrum singular_values(const Matrix& A, double tol) {
    require_finite(A);
    Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SingularSpectrum s;
    const auto& sv = svd.singularValues();
    s.values.assign(sv.data(), sv.data() + sv.size());
    const Matrix recon = svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
    const double scale = A.norm();
    s.residual = (A - recon).norm() / (scale > 0.0 ? scale : 1.0);
    s.converged = s.residual <= tol;
    return s;
}

std::vector<double> spectrum_values(const Matrix& A) {
    require_finite(A);
    Eigen::BDCSVD<Matrix> svd(A);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

TailEstimate smallest_singular_tail(std::size_t n, const DistributionSpec& entry, std::vector<double> eps_grid,
                                    std::size_t trials, std::uint64_t seed) {
    if (trials < 100) throw ArgumentError("smallest_singular_tail needs trials >= 100");
    if (n == 0) throw ArgumentError("n must be >= 1");
    for (double e : eps_grid)
        if (!(e >= 0.0)) throw ArgumentError("eps grid values must be >= 0");
    std::sort(eps_grid.begin(), eps_grid.end());

    TailEstimate t;
    t.n = n;
    t.eps_grid = std::move(eps_grid);
    t.trials = trials;
    t.counts.assign(t.eps_grid.size(), 0);
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < trials; ++i) {
        const auto s = derive_seed(seed, "matrix-tail", i);
        const double smin = spectrum_values(sample_matrix({n, n, entry}, s)).back();
        t.trial_seeds.push_back(s);
        t.smallest.push_back(smin);
        for (std::size_t e = 0; e < t.eps_grid.size(); ++e)
            if (smin <= t.eps_grid[e] / root_n) ++t.counts[e];
    }
    for (std::size_t c : t.counts) t.bands.push_back(wilson_interval(c, trials));
    return t;
}

LargestStats largest_singular_stats(std::size_t n, const DistributionSpec& entry, std::size_t trials,
                                    std::uint64_t seed) {
    if (!entry.fourth_moment()) throw PreconditionError("largest_singular_stats needs a finite fourth moment");
    if (n == 0 || trials == 0) throw ArgumentError("n and trials must be >= 1");
    LargestStats r;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < trials; ++i) {
        const auto s = derive_seed(seed, "largest-sv", i);
        const double smax = spectrum_values(sample_matrix({n, n, entry}, s)).front();
        r.trial_seeds.push_back(s);
        r.largest.push_back(smax);
        r.scaled.push_back(smax / root_n);
    }
    r.summary = summarize(r.scaled);
    return r;
}

double ExactProbability::value() const {
    return static_cast<double>(boost::multiprecision::cpp_rational(numerator, denominator));
}

namespace {

struct Rational {
    std::int64_t num;
    std::int64_t den;
};

// Continued-fraction recovery of a small rational; rejects values that are not one.
Rational to_rational(double x, std::int64_t max_den = 1'000'000) {
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(r);
        if (std::abs(fl) > 1e15) break;
        const auto q = static_cast<std::int64_t>(fl);
        const std::int64_t h2 = q * h1 + h0, k2 = q * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-12 * std::max(1.0, std::abs(x)))
            return {h1, k1};
        const double frac = r - fl;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    throw ArgumentError("atom " + std::to_string(x) + " is not exactly representable as a small rational");
}

struct IntegerLaw {
    std::vector<std::vector<std::int64_t>> values;  // per column (one entry if unshifted)
    std::vector<Rational> probs;
    std::int64_t scale = 1;
};

IntegerLaw integer_law(const DistributionSpec& entry, std::size_t cols) {
    if (!entry.finite_support()) throw ArgumentError("exact singularity needs a finite-support entry law");
    IntegerLaw law;
    const std::size_t shifts = entry.offsets().size() > 1 ? cols : 1;
    std::vector<std::vector<Rational>> vals(shifts);
    for (std::size_t j = 0; j < shifts; ++j)
        for (const auto& at : entry.atoms()) {
            vals[j].push_back(to_rational(at.value + entry.offset(j)));
            law.scale = std::lcm(law.scale, vals[j].back().den);
        }
    for (const auto& at : entry.atoms()) law.probs.push_back(to_rational(at.prob));
    law.values.resize(shifts);
    for (std::size_t j = 0; j < shifts; ++j)
        for (const auto& v : vals[j]) law.values[j].push_back(v.num * (law.scale / v.den));
    return law;
}

} // namespace

ExactProbability exact_singularity_probability(std::size_t n, const DistributionSpec& entry, std::uint64_t budget) {
    if (n == 0) throw ArgumentError("n must be >= 1");
    const IntegerLaw law = integer_law(entry, n);
    const std::size_t support = law.probs.size();
    const std::size_t cells = n * n;
    const double log_count = static_cast<double>(cells) * std::log2(static_cast<double>(support));
    if (log_count > std::log2(static_cast<double>(budget)))
        throw CapacityError("exact singularity enumeration needs 2^" + std::to_string(log_count) +
                            " matrices, over the budget of " + std::to_string(budget));

    std::int64_t common = 1;
    for (const auto& p : law.probs) common = std::lcm(common, p.den);
    std::vector<std::int64_t> weight;
    for (const auto& p : law.probs) weight.push_back(p.num * (common / p.den));

    std::vector<std::size_t> digits(cells, 0);
    std::vector<std::int64_t> m(cells);
    BigInt singular_weight = 0;
    while (true) {
        BigInt w = 1;
        for (std::size_t c = 0; c < cells; ++c) {
            const auto& col_vals = law.values[law.values.size() == 1 ? 0 : c % n];
            m[c] = col_vals[digits[c]];
            w *= weight[digits[c]];
        }
        if (integer_matrix_singular(m, n)) singular_weight += w;
        std::size_t c = 0;
        while (c < cells && ++digits[c] == support) digits[c++] = 0;
        if (c == cells) break;
    }
    BigInt denom = boost::multiprecision::pow(BigInt(common), static_cast<unsigned>(cells));
    const BigInt g = boost::multiprecision::gcd(singular_weight, denom);
    ExactProbability p;
    p.numerator = g == 0 ? singular_weight : singular_weight / g;
    p.denominator = g == 0 ? denom : denom / g;
    if (p.numerator == 0) p.denominator = 1;
    return p;
}

SingularityEstimate monte_carlo_singularity(std::size_t n, const DistributionSpec& entry, std::size_t trials,
                                            std::uint64_t seed) {
    if (n == 0 || trials == 0) throw ArgumentError("n and trials must be >= 1");
    const IntegerLaw law = integer_law(entry, n);
    const auto scale = static_cast<double>(law.scale);
    SingularityEstimate r;
    r.trials = trials;
    std::vector<std::int64_t> m(n * n);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto s = derive_seed(seed, "singularity", i);
        const Matrix A = sample_matrix({n, n, entry}, s);
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t col = 0; col < n; ++col)
                m[row * n + col] = std::llround(A(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * scale);
        const bool sing = integer_matrix_singular(m, n);
        r.trial_seeds.push_back(s);
        r.is_singular.push_back(sing ? 1 : 0);
        r.singular += sing ? 1 : 0;
    }
    r.fraction = static_cast<double>(r.singular) / static_cast<double>(trials);
    r.band = wilson_interval(r.singular, trials);
    return r;
}

NormalVector random_normal(const Matrix& columns) {
    const auto n = columns.rows();
    if (n < 2) throw ArgumentError("random_normal needs n >= 2");
    if (columns.cols() != n - 1) throw ArgumentError("random_normal needs exactly n - 1 columns");
    require_finite(columns);
    Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeFullU);
    NormalVector r;
    r.x = svd.matrixU().col(n - 1);
    const auto& sv = svd.singularValues();
    const double cutoff = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * sv(0);
    r.degenerate = sv(0) == 0.0 || sv(sv.size() - 1) <= cutoff;
    Eigen::Index lead = 0;
    r.x.cwiseAbs().maxCoeff(&lead);
    if (r.x(lead) < 0.0) r.x = -r.x;
    r.x /= r.x.norm();
    return r;
}

double DistanceReport::ecdf(double eps) const {
    if (sorted_distances.empty()) return 0.0;
    const auto below = std::lower_bound(sorted_distances.begin(), sorted_distances.end(), eps) - sorted_distances.begin();
    return static_cast<double>(below) / static_cast<double>(sorted_distances.size());
}

DistanceReport distance_experiment(std::size_t n, const DistributionSpec& entry, std::size_t trials,
                                   std::uint64_t seed) {
    if (n < 2) throw ArgumentError("distance_experiment needs n >= 2");
    if (trials == 0) throw ArgumentError("trials must be >= 1");
    DistanceReport r;
    r.n = n;
    const auto ni = static_cast<Eigen::Index>(n);
    for (std::size_t i = 0; i < trials; ++i) {
        DistanceTrial t;
        t.seed = derive_seed(seed, "distance", i);
        const Matrix A = sample_matrix({n, n, entry}, t.seed);
        const Matrix H = A.leftCols(ni - 1);
        const Vector x = A.col(ni - 1);
        const NormalVector normal = random_normal(H);
        t.degenerate = normal.degenerate;
        t.inner_product = std::abs(normal.x.dot(x));
        if (!t.degenerate) {
            const Vector coef = H.colPivHouseholderQr().solve(x);
            t.distance = (x - H * coef).norm();
        }
        t.discrepancy = std::abs(t.distance - t.inner_product) / std::max(t.distance, 1e-300);
        r.sorted_distances.push_back(t.distance);
        r.trials.push_back(t);
    }
    std::sort(r.sorted_distances.begin(), r.sorted_distances.end());
    return r;
}

double NormalLcdReport::compressible_fraction() const {
    return trials.empty() ? 0.0 : static_cast<double>(compressible) / static_cast<double>(trials.size());
}

NormalLcdReport normal_lcd_experiment(const NormalLcdParams& p, const DistributionSpec& entry) {
    if (p.n < 2) throw ArgumentError("normal_lcd_experiment needs n >= 2");
    if (!(p.beta > 0.0 && p.beta < 0.5)) throw ArgumentError("beta must be in (0, 1/2)");
    if (p.trials == 0) throw ArgumentError("trials must be >= 1");
    lcd::validate({p.alpha, p.beta * static_cast<double>(p.n), p.t_max});
    vectors::validate({p.delta, p.rho});
    if (!(p.k1 > 0.0 && p.k1 < p.k2)) throw ArgumentError("need 0 < K1 < K2");

    NormalLcdReport r;
    r.params = p;
    const double kappa = p.beta * static_cast<double>(p.n);
    std::vector<double> censored;
    for (std::size_t i = 0; i < p.trials; ++i) {
        NormalLcdTrial t;
        t.seed = derive_seed(p.seed, "normal-lcd", i);
        const NormalVector normal = random_normal(sample_matrix({p.n, p.n - 1, entry}, t.seed));
        t.degenerate = normal.degenerate;
        const CoefficientVector x(std::vector<double>(normal.x.data(), normal.x.data() + normal.x.size()));
        t.compressible = vectors::classify_compressible(x, {p.delta, p.rho}) == vectors::Compressibility::compressible;
        const auto part = vectors::spread_part(x, p.k1, p.k2);
        if (!part) {
            // Undefined spread part: D is taken as 0, which makes the bound vacuous.
            t.status = LcdStatus::not_defined;
            ++r.not_defined;
        } else {
            t.spread_size = part->indices.size();
            const auto d = lcd::essential_lcd(part->as_vector(), {p.alpha, kappa, p.t_max});
            if (d) {
                t.status = LcdStatus::found;
                t.lcd = *d;
                t.censored_lcd = *d;
            } else {
                t.status = LcdStatus::not_found;
                t.censored_lcd = p.t_max;
                ++r.not_found;
            }
        }
        r.compressible += t.compressible ? 1 : 0;
        censored.push_back(t.censored_lcd);
        r.trials.push_back(t);
    }
    r.censored = summarize(std::move(censored));
    return r;
}

RectangularReport rectangular_smin_experiment(std::size_t n, std::size_t k, const DistributionSpec& entry,
                                              std::size_t trials, std::uint64_t seed) {
    if (k == 0) throw ArgumentError("k must be >= 1");
    if (k >= n) throw ArgumentError("rectangular experiment needs k < n");
    if (trials == 0) throw ArgumentError("trials must be >= 1");
    RectangularReport r;
    r.n = n;
    r.k = k;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < trials; ++i) {
        const auto s = derive_seed(seed, "rectangular", i);
        const double smin = spectrum_values(sample_matrix({n, k, entry}, s)).back();
        r.trial_seeds.push_back(s);
        r.smallest.push_back(smin);
        r.scaled.push_back(smin / root_n);
    }
    r.summary = summarize(r.scaled);
    return r;
}

} // namespace lolab::randmat
