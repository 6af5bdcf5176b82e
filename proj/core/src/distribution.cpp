#include "lolab/distribution.hpp"

#include "lolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lolab {

DistributionSpec DistributionSpec::rademacher() {
    DistributionSpec d;
    d.family_ = Family::rademacher;
    d.atoms_ = {{-1.0, 0.5}, {1.0, 0.5}};
    d.cdf_ = {0.5, 1.0};
    d.variance_ = 1.0;
    d.third_moment_ = 1.0;
    d.fourth_moment_ = 1.0;
    // P(|xi| > t) = 1 for t < 1 needs 2 exp(-t^2/B^2) >= 1 there.
    d.subgaussian_ = 1.0 / std::sqrt(std::numbers::ln2);
    return d;
}

DistributionSpec DistributionSpec::gaussian() {
    DistributionSpec d;
    d.family_ = Family::gaussian;
    d.variance_ = 1.0;
    d.third_moment_ = 2.0 * std::sqrt(2.0 / std::numbers::pi);
    d.fourth_moment_ = 3.0;
    d.subgaussian_ = std::sqrt(2.0);
    return d;
}

DistributionSpec DistributionSpec::discrete(std::vector<Atom> atoms) {
    if (atoms.empty()) throw ArgumentError("discrete distribution needs at least one atom");
    double total = 0.0;
    for (const auto& at : atoms) {
        if (!std::isfinite(at.value) || !std::isfinite(at.prob) || at.prob <= 0.0)
            throw ArgumentError("discrete atoms need finite values and positive probabilities");
        total += at.prob;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("discrete probabilities must sum to 1 within 1e-12");
    DistributionSpec d;
    d.family_ = Family::discrete;
    d.atoms_ = std::move(atoms);
    d.fill_discrete_moments();
    return d;
}

void DistributionSpec::fill_discrete_moments() {
    double m1 = 0.0, m3 = 0.0, m4 = 0.0, amax = 0.0;
    cdf_.clear();
    double acc = 0.0;
    for (const auto& at : atoms_) {
        m1 += at.prob * at.value;
        m3 += at.prob * std::pow(std::abs(at.value), 3);
        m4 += at.prob * std::pow(at.value, 4);
        amax = std::max(amax, std::abs(at.value));
        acc += at.prob;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
    double var = 0.0;
    for (const auto& at : atoms_) var += at.prob * (at.value - m1) * (at.value - m1);
    variance_ = var;
    third_moment_ = m3;
    fourth_moment_ = m4;
    // Bounded by amax; amax / sqrt(ln 2) works for every t (not necessarily minimal).
    subgaussian_ = amax > 0.0 ? std::optional<double>(amax / std::sqrt(std::numbers::ln2)) : std::nullopt;
}

DistributionSpec DistributionSpec::shifted(std::vector<double> offsets) const {
    if (offsets.empty()) throw ArgumentError("shifted: offsets must be non-empty");
    for (double t : offsets)
        if (!std::isfinite(t)) throw ArgumentError("shifted: offsets must be finite");
    DistributionSpec d = *this;
    d.offsets_ = std::move(offsets);
    return d;
}

DistributionSpec DistributionSpec::restricted(std::span<const std::size_t> sigma) const {
    if (offsets_.size() <= 1) return *this;
    std::vector<double> kept;
    kept.reserve(sigma.size());
    for (std::size_t k : sigma) kept.push_back(offset(k));
    DistributionSpec d = *this;
    d.offsets_ = std::move(kept);
    return d;
}

double DistributionSpec::offset(std::size_t coord) const {
    if (offsets_.empty()) return 0.0;
    if (offsets_.size() == 1) return offsets_.front();
    if (coord >= offsets_.size()) throw ArgumentError("shift offset requested for a coordinate without one");
    return offsets_[coord];
}

double DistributionSpec::sample(Stream& stream, std::size_t coord) const {
    double x = 0.0;
    switch (family_) {
    case Family::rademacher:
        x = stream.sign();
        break;
    case Family::gaussian:
        x = stream.normal();
        break;
    case Family::discrete: {
        const double u = stream.uniform();
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        x = atoms_[static_cast<std::size_t>(std::distance(cdf_.begin(), it))].value;
        break;
    }
    }
    return x + offset(coord);
}

std::string DistributionSpec::name() const {
    std::ostringstream os;
    switch (family_) {
    case Family::rademacher: os << "rademacher"; break;
    case Family::gaussian: os << "gaussian"; break;
    case Family::discrete: os << "discrete(" << atoms_.size() << " atoms)"; break;
    }
    if (is_shifted()) os << "+shift";
    return os.str();
}

} // namespace lolab
