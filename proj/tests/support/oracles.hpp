#pragma once

// Independent reference computations used to check the library. None of these
// call into the code under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lolab::testkit {

inline double dist_to_int(double x) { return std::abs(x - std::round(x)); }

inline double dist_to_nonzero_int(double x) {
    const double r = std::round(x);
    if (r != 0.0) return std::abs(x - r);
    return std::abs(std::abs(x) - 1.0);
}

/// First grid point t = k*step in (0, t_max] where all but floor(kappa)
/// coordinates of t*a are within alpha of a nonzero integer.
inline std::optional<double> grid_lcd(const std::vector<double>& a, double alpha, double kappa, double t_max,
                                      double step) {
    const auto need = static_cast<long>(a.size()) - static_cast<long>(std::floor(kappa));
    if (need <= 0) return 0.0;
    const auto steps = static_cast<long>(std::floor(t_max / step));
    for (long i = 1; i <= steps; ++i) {
        const double t = static_cast<double>(i) * step;
        long good = 0;
        for (double x : a)
            if (dist_to_nonzero_int(t * x) <= alpha) ++good;
        if (good >= need) return t;
    }
    return std::nullopt;
}

/// Measure of {t in [-y, y] : all but floor(kappa) coordinates of t*a within alpha of Z},
/// by midpoint rule with the given step.
inline double grid_recurrence_measure(const std::vector<double>& a, double alpha, double kappa, double y,
                                      double step) {
    const auto need = static_cast<long>(a.size()) - static_cast<long>(std::floor(kappa));
    const auto cells = static_cast<long>(std::ceil(2.0 * y / step));
    const double h = 2.0 * y / static_cast<double>(cells);
    long inside = 0;
    for (long i = 0; i < cells; ++i) {
        const double t = -y + (static_cast<double>(i) + 0.5) * h;
        long good = 0;
        for (double x : a)
            if (dist_to_int(t * x) <= alpha) ++good;
        if (good >= need) ++inside;
    }
    return static_cast<double>(inside) * h;
}

/// All sums sum_k a_k xi_k with probabilities, xi drawn from (value, prob) atoms.
inline std::vector<std::pair<double, double>> all_sums(const std::vector<double>& a,
                                                       const std::vector<std::pair<double, double>>& atoms) {
    std::vector<std::pair<double, double>> out{{0.0, 1.0}};
    for (double ak : a) {
        std::vector<std::pair<double, double>> next;
        for (const auto& [s, p] : out)
            for (const auto& [v, q] : atoms) next.emplace_back(s + ak * v, p * q);
        out = std::move(next);
    }
    return out;
}

/// sup_v P(|S - v| <= eps) by checking every window [s_i, s_i + 2 eps] in O(N^2).
inline double brute_small_ball(const std::vector<double>& a, double eps,
                               const std::vector<std::pair<double, double>>& atoms) {
    const auto sums = all_sums(a, atoms);
    const double tol = 1e-9 * (1.0 + std::accumulate(a.begin(), a.end(), 0.0,
                                                     [](double acc, double x) { return acc + std::abs(x); }));
    double best = 0.0;
    for (const auto& [lo, _] : sums) {
        double mass = 0.0;
        for (const auto& [s, p] : sums)
            if (s >= lo - tol && s <= lo + 2.0 * eps + tol) mass += p;
        best = std::max(best, mass);
    }
    return best;
}

inline std::vector<std::pair<double, double>> rademacher_atoms() { return {{-1.0, 0.5}, {1.0, 0.5}}; }

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

/// Leibniz expansion; exact for small integer matrices.
inline std::int64_t leibniz_det(const std::vector<std::int64_t>& m, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::int64_t total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        std::int64_t term = inversions % 2 == 0 ? 1 : -1;
        for (std::size_t i = 0; i < n; ++i) term *= m[i * n + perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Largest singular value by power iteration on A^T A.
inline double power_iteration_norm(const Eigen::MatrixXd& A, int iterations = 2000) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols()).normalized();
    double sigma = 0.0;
    for (int i = 0; i < iterations; ++i) {
        Eigen::VectorXd w = A.transpose() * (A * v);
        const double nrm = w.norm();
        if (nrm == 0.0) return 0.0;
        v = w / nrm;
        const double next = (A * v).norm();
        if (std::abs(next - sigma) <= 1e-15 * next) return next;
        sigma = next;
    }
    return sigma;
}

/// ||A^{-1}||_2 by power iteration on (A^T A)^{-1} with LU solves.
inline double inverse_norm(const Eigen::MatrixXd& A, int iterations = 5000) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lut(A.transpose());
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols()).normalized();
    double sigma = 0.0;
    for (int i = 0; i < iterations; ++i) {
        Eigen::VectorXd w = lu.solve(lut.solve(v));
        v = w.normalized();
        const double next = lut.solve(v).norm();
        if (std::abs(next - sigma) <= 1e-14 * next) return next;
        sigma = next;
    }
    return sigma;
}

} // namespace lolab::testkit
