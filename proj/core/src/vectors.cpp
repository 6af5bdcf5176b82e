#include "lolab/vectors.hpp"

#include "lolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lolab {

CoefficientVector::CoefficientVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ArgumentError("coefficient vector must have length >= 1");
    for (double v : values_)
        if (!std::isfinite(v)) throw ArgumentError("coefficient vector entries must be finite");
    norms_ = vectors::vector_norms(values_);
}

CoefficientVector CoefficientVector::scaled(double c) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= c;
    return CoefficientVector(std::move(out));
}

CoefficientVector CoefficientVector::restricted(std::span<const std::size_t> sigma) const {
    std::vector<double> out;
    out.reserve(sigma.size());
    for (std::size_t k : sigma) {
        if (k >= values_.size()) throw ArgumentError("restriction index out of range");
        out.push_back(values_[k]);
    }
    return CoefficientVector(std::move(out));
}

namespace vectors {

Norms vector_norms(std::span<const double> values) {
    Norms n;
    for (double v : values) n.linf = std::max(n.linf, std::abs(v));
    if (n.linf == 0.0) return n;
    // Scale by the max entry so cubes and squares cannot overflow.
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (double v : values) {
        const double r = std::abs(v) / n.linf;
        s1 += r;
        s2 += r * r;
        s3 += r * r * r;
    }
    n.l1 = n.linf * s1;
    n.l2 = n.linf * std::sqrt(s2);
    n.l3 = n.linf * std::cbrt(s3);
    return n;
}

double distance_to_sparse(const CoefficientVector& x, std::size_t s) {
    const std::size_t n = x.size();
    if (s > n) throw ArgumentError("distance_to_sparse: s must be in [0, n]");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return std::abs(x[i]) > std::abs(x[j]); });
    std::vector<double> tail;
    tail.reserve(n - s);
    for (std::size_t i = s; i < n; ++i) tail.push_back(x[order[i]]);
    if (tail.empty()) return 0.0;
    return vector_norms(tail).l2;
}

void validate(const CompressibilityParams& p) {
    if (!(p.delta > 0.0 && p.delta < 1.0)) throw ArgumentError("delta must be in (0,1)");
    if (!(p.rho > 0.0 && p.rho < 1.0)) throw ArgumentError("rho must be in (0,1)");
}

namespace {

constexpr double unit_tolerance = 1e-9;

void require_unit(const CoefficientVector& x) {
    if (std::abs(x.norms().l2 - 1.0) > unit_tolerance) throw ArgumentError("expected a unit vector (|x|_2 = 1 within 1e-9)");
}

} // namespace

Compressibility classify_compressible(const CoefficientVector& x, const CompressibilityParams& p) {
    validate(p);
    require_unit(x);
    const auto budget = static_cast<std::size_t>(std::floor(p.delta * static_cast<double>(x.size())));
    return distance_to_sparse(x, budget) <= p.rho ? Compressibility::compressible : Compressibility::incompressible;
}

std::vector<std::size_t> spread_set(const CoefficientVector& x, const CompressibilityParams& p) {
    validate(p);
    const double n = static_cast<double>(x.size());
    const double lo = p.rho / std::sqrt(2.0 * n);
    const double hi = 1.0 / std::sqrt(p.delta * n);
    std::vector<std::size_t> sigma;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double v = std::abs(x[k]);
        if (lo <= v && v <= hi) sigma.push_back(k);
    }
    return sigma;
}

double spread_lower_bound(std::size_t n, const CompressibilityParams& p) {
    return 0.5 * p.rho * p.rho * p.delta * static_cast<double>(n);
}

std::optional<SpreadPart> spread_part(const CoefficientVector& x, double k1, double k2) {
    if (!(k1 > 0.0) || !(k1 < k2)) throw ArgumentError("spread_part: need 0 < K1 < K2");
    const double root_n = std::sqrt(static_cast<double>(x.size()));
    SpreadPart part;
    part.k1 = k1;
    part.k2 = k2;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double v = root_n * x[k];
        if (k1 <= std::abs(v) && std::abs(v) <= k2) {
            part.indices.push_back(k);
            part.scaled_values.push_back(v);
        }
    }
    if (part.indices.empty()) return std::nullopt;
    return part;
}

} // namespace vectors
} // namespace lolab
