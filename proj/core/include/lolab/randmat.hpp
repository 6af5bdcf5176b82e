#pragma once

#include "lolab/distribution.hpp"
#include "lolab/stats.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lolab::randmat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Ensemble {
    std::size_t rows = 1;
    std::size_t cols = 1;
    DistributionSpec entry = DistributionSpec::gaussian();
};

/// rows x cols matrix of i.i.d. entries drawn row-major from the stream seeded
/// with `seed`. Shift offsets, if any, are indexed by column.
Matrix sample_matrix(const Ensemble& e, std::uint64_t seed);

struct SingularSpectrum {
    std::vector<double> values;  // non-increasing
    double residual = 0.0;       // ||A - U S V^T||_F / ||A||_F
    bool converged = true;       // residual <= tol

    double largest() const { return values.front(); }
    double smallest() const { return values.back(); }
};

/// Full spectrum through bidiagonalization (divide and conquer).
SingularSpectrum singular_values(const Matrix& A, double tol = 1e-10);

/// Values only, no backward-error diagnostic. Used inside the experiments.
std::vector<double> spectrum_values(const Matrix& A);

struct TailEstimate {
    std::size_t n = 0;
    std::vector<double> eps_grid;
    std::vector<std::size_t> counts;
    std::size_t trials = 0;
    std::vector<WilsonInterval> bands;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> smallest;  // s_n per trial

    double fraction(std::size_t i) const { return static_cast<double>(counts[i]) / static_cast<double>(trials); }
};

/// Fraction of n x n samples with s_n <= eps n^{-1/2}, per eps.
TailEstimate smallest_singular_tail(std::size_t n, const DistributionSpec& entry, std::vector<double> eps_grid,
                                    std::size_t trials, std::uint64_t seed);

struct LargestStats {
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> largest;  // s_1 per trial
    std::vector<double> scaled;   // s_1 / sqrt(n)
    Summary summary;
};

LargestStats largest_singular_stats(std::size_t n, const DistributionSpec& entry, std::size_t trials,
                                    std::uint64_t seed);

using BigInt = boost::multiprecision::cpp_int;

struct ExactProbability {
    BigInt numerator;
    BigInt denominator;

    double value() const;
};

/// Exact determinant of an integer matrix (row-major, n x n) by fraction-free
/// Bareiss elimination.
BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n);

/// True iff the integer matrix is singular. Runs in 128-bit arithmetic when a
/// Hadamard bound proves no intermediate can overflow, big integers otherwise.
bool integer_matrix_singular(std::span<const std::int64_t> m, std::size_t n);

inline constexpr std::uint64_t default_matrix_budget = 4096;

/// P(det A = 0) for an n x n matrix with i.i.d. entries from a finite law with
/// rational atoms, by enumerating all |support|^(n^2) matrices. Throws
/// CapacityError past `budget` matrices (n = 3 fits the default for signs,
/// n = 4 needs budget >= 65536).
ExactProbability exact_singularity_probability(std::size_t n, const DistributionSpec& entry,
                                               std::uint64_t budget = default_matrix_budget);

struct SingularityEstimate {
    std::size_t singular = 0;
    std::size_t trials = 0;
    double fraction = 0.0;
    WilsonInterval band;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<std::uint8_t> is_singular;
};

/// Monte Carlo P(det A = 0) with exact integer determinants. Atoms must be
/// integers after scaling by a common denominator.
SingularityEstimate monte_carlo_singularity(std::size_t n, const DistributionSpec& entry, std::size_t trials,
                                            std::uint64_t seed);

struct NormalVector {
    Vector x;
    bool degenerate = false;  // columns have rank < n - 1
};

/// Unit vector orthogonal to the n - 1 columns of an n x (n-1) matrix. Sign is
/// fixed so that the first coordinate of largest magnitude is positive.
NormalVector random_normal(const Matrix& columns);

struct DistanceTrial {
    std::uint64_t seed = 0;
    double distance = 0.0;       // dist(X_n, H_n) by least squares
    double inner_product = 0.0;  // |<X*, X_n>|
    double discrepancy = 0.0;    // |dist - |<X*, X_n>|| / max(dist, 1e-300)
    bool degenerate = false;
};

struct DistanceReport {
    std::size_t n = 0;
    std::vector<DistanceTrial> trials;
    std::vector<double> sorted_distances;  // degenerate trials contribute 0

    /// Empirical P(dist < eps).
    double ecdf(double eps) const;
};

DistanceReport distance_experiment(std::size_t n, const DistributionSpec& entry, std::size_t trials,
                                   std::uint64_t seed);

struct NormalLcdParams {
    std::size_t n = 10;
    double k1 = 0.5;
    double k2 = 3.0;
    double alpha = 0.2;
    double beta = 0.1;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double t_max = 1e4;
    double delta = 0.1;  // compressibility classifier
    double rho = 0.1;
};

enum class LcdStatus { found, not_found, not_defined };

struct NormalLcdTrial {
    std::uint64_t seed = 0;
    std::size_t spread_size = 0;
    LcdStatus status = LcdStatus::not_defined;
    double lcd = 0.0;           // valid when found
    double censored_lcd = 0.0;  // t_max when not found, 0 when not defined
    bool compressible = false;
    bool degenerate = false;
};

struct NormalLcdReport {
    NormalLcdParams params;
    std::vector<NormalLcdTrial> trials;
    std::size_t not_found = 0;
    std::size_t not_defined = 0;
    std::size_t compressible = 0;
    Summary censored;

    double compressible_fraction() const;
};

/// D_{alpha, beta n} of the spread part of the random normal of n - 1 random
/// columns, censored at t_max.
NormalLcdReport normal_lcd_experiment(const NormalLcdParams& p, const DistributionSpec& entry);

struct RectangularReport {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> smallest;
    std::vector<double> scaled;  // s_min / sqrt(n)
    Summary summary;
};

/// s_min(G)/sqrt(n) for n x k samples, k < n.
RectangularReport rectangular_smin_experiment(std::size_t n, std::size_t k, const DistributionSpec& entry,
                                              std::size_t trials, std::uint64_t seed);

} // namespace lolab::randmat
