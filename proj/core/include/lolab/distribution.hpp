#pragma once

#include "lolab/rng.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lolab {

enum class Family { rademacher, gaussian, discrete };

struct Atom {
    double value = 0.0;
    double prob = 0.0;
};

/// Law of the i.i.d. step variable xi, optionally shifted per coordinate.
///
/// Shifted laws xi_k + t_k keep the moment metadata of the centered base
/// variable; the offsets only move the sum. A single offset applies to every
/// coordinate.
class DistributionSpec {
public:
    static DistributionSpec rademacher();
    static DistributionSpec gaussian();
    /// Finite-support law. Probabilities must be positive and sum to 1 within 1e-12.
    static DistributionSpec discrete(std::vector<Atom> atoms);

    DistributionSpec shifted(std::vector<double> offsets) const;
    /// Keeps the offsets of the listed coordinates (for restrictions P_sigma a).
    DistributionSpec restricted(std::span<const std::size_t> sigma) const;

    Family family() const { return family_; }
    bool finite_support() const { return family_ != Family::gaussian; }
    bool is_shifted() const { return !offsets_.empty(); }
    std::span<const double> offsets() const { return offsets_; }
    double offset(std::size_t coord) const;

    /// Support of the unshifted variable. Empty for the gaussian family.
    const std::vector<Atom>& atoms() const { return atoms_; }

    double variance() const { return variance_; }
    /// E|xi|^3 of the base variable.
    double third_moment_bound() const { return third_moment_; }
    std::optional<double> fourth_moment() const { return fourth_moment_; }
    /// A constant B with P(|xi| > t) <= 2 exp(-t^2/B^2) for all t > 0.
    std::optional<double> subgaussian_constant() const { return subgaussian_; }

    /// Draws xi_k + t_k for coordinate `coord`.
    double sample(Stream& stream, std::size_t coord = 0) const;

    std::string name() const;

private:
    DistributionSpec() = default;
    void fill_discrete_moments();

    Family family_ = Family::rademacher;
    std::vector<Atom> atoms_;
    std::vector<double> cdf_;
    std::vector<double> offsets_;
    double variance_ = 1.0;
    double third_moment_ = 1.0;
    std::optional<double> fourth_moment_;
    std::optional<double> subgaussian_;
};

} // namespace lolab
