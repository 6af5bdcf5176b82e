#include "lolab/errors.hpp"
#include "lolab/randmat.hpp"

#include <cmath>
#include <utility>

namespace lolab::randmat {

namespace {

__extension__ using int128 = __int128;

template <class Int>
bool bareiss_zero(std::vector<Int>& m, std::size_t n) {
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p * n + k] == 0) ++p;
            if (p == n) return true;
            for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    return m[n * n - 1] == 0;
}

} // namespace

BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n) {
    if (m.size() != n * n) throw ArgumentError("bareiss_determinant: expected n*n entries");
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p * n + k] == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    return sign * m[n * n - 1];
}

bool integer_matrix_singular(std::span<const std::int64_t> m, std::size_t n) {
    if (m.size() != n * n) throw ArgumentError("integer_matrix_singular: expected n*n entries");
    if (n == 0) return false;
    // Every Bareiss intermediate is a minor, hence bounded by prod_i max(1, |row_i|_2).
    double log2_bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < n; ++j) sq += static_cast<double>(m[i * n + j]) * static_cast<double>(m[i * n + j]);
        log2_bound += std::max(0.0, 0.5 * std::log2(sq));
    }
    if (log2_bound < 60.0) {
        std::vector<int128> w(m.begin(), m.end());
        return bareiss_zero(w, n);
    }
    std::vector<BigInt> w(m.begin(), m.end());
    return bareiss_zero(w, n);
}

} // namespace lolab::randmat
