#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lolab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent substream seed from (master, label, index).
///
/// The label is folded with 64-bit FNV-1a, then master, label hash and index
/// are mixed through three rounds of SplitMix64. Every Monte Carlo routine in
/// the library uses this to give trial `i` its own stream, so results do not
/// depend on the order in which trials are executed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) noexcept;

/// Deterministic uniform stream backed by mt19937_64.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53 bits of resolution.
    double uniform();

    /// Fair +1/-1.
    double sign() { return (engine_() >> 63) != 0U ? 1.0 : -1.0; }

    /// Standard normal by inverse CDF (one uniform per draw).
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Standard normal quantile function.
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace lolab
