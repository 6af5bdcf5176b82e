#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace lolab {

struct Norms {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double linf = 0.0;
};

/// Finite real coefficient sequence with cached p-norms.
class CoefficientVector {
public:
    /// Throws ArgumentError on an empty or non-finite sequence.
    explicit CoefficientVector(std::vector<double> values);
    CoefficientVector(std::initializer_list<double> values)
        : CoefficientVector(std::vector<double>(values)) {}

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    const Norms& norms() const { return norms_; }

    CoefficientVector scaled(double c) const;
    CoefficientVector restricted(std::span<const std::size_t> sigma) const;

private:
    std::vector<double> values_;
    Norms norms_;
};

namespace vectors {

Norms vector_norms(std::span<const double> values);
inline Norms vector_norms(const CoefficientVector& a) { return a.norms(); }

/// Euclidean distance from x to the vectors with at most s nonzero entries,
/// i.e. the norm of x with its s largest-magnitude entries removed. Ties keep
/// the lower index.
double distance_to_sparse(const CoefficientVector& x, std::size_t s);

struct CompressibilityParams {
    double delta;
    double rho;
};

void validate(const CompressibilityParams& p);

enum class Compressibility { compressible, incompressible };

/// Comp(delta, rho) membership of a unit vector; sparsity budget floor(delta n).
Compressibility classify_compressible(const CoefficientVector& x, const CompressibilityParams& p);

/// {k : rho/sqrt(2n) <= |x_k| <= 1/sqrt(delta n)}, 0-based and increasing.
std::vector<std::size_t> spread_set(const CoefficientVector& x, const CompressibilityParams& p);

/// Lower bound rho^2 delta n / 2 on |spread_set| for incompressible x.
double spread_lower_bound(std::size_t n, const CompressibilityParams& p);

struct SpreadPart {
    std::vector<std::size_t> indices;
    std::vector<double> scaled_values;
    double k1 = 0.0;
    double k2 = 0.0;

    CoefficientVector as_vector() const { return CoefficientVector(scaled_values); }
};

/// Coordinates of sqrt(n) x with magnitude in [k1, k2]; nullopt when none
/// qualify (the spread part is not defined).
std::optional<SpreadPart> spread_part(const CoefficientVector& x, double k1, double k2);

} // namespace vectors
} // namespace lolab
