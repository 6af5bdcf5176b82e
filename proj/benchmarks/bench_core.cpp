#include "lolab/lcd.hpp"
#include "lolab/randmat.hpp"
#include "lolab/rng.hpp"
#include "lolab/smallball.hpp"

#include <benchmark/benchmark.h>

namespace {

lolab::CoefficientVector random_coefficients(std::size_t n, std::uint64_t seed) {
    lolab::Stream s(seed);
    std::vector<double> a(n);
    for (auto& x : a) x = 1.0 + 4.0 * s.uniform();
    return lolab::CoefficientVector(a);
}

void BM_EssentialLcd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_coefficients(n, 1);
    const lolab::lcd::LcdParams p{0.25, static_cast<double>(n / 4), 50.0};
    for (auto _ : state) benchmark::DoNotOptimize(lolab::lcd::essential_lcd(a, p));
}
BENCHMARK(BM_EssentialLcd)->Arg(8)->Arg(32)->Arg(128);

void BM_ExactSmallBall(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_coefficients(n, 2);
    const auto r = lolab::DistributionSpec::rademacher();
    for (auto _ : state) benchmark::DoNotOptimize(lolab::smallball::exact_small_ball(a, 0.5, r));
}
BENCHMARK(BM_ExactSmallBall)->Arg(10)->Arg(16)->Arg(20);

void BM_SingularValues(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto A = lolab::randmat::sample_matrix({n, n, lolab::DistributionSpec::gaussian()}, 3);
    for (auto _ : state) benchmark::DoNotOptimize(lolab::randmat::spectrum_values(A));
}
BENCHMARK(BM_SingularValues)->Arg(50)->Arg(100)->Arg(400);

} // namespace
BENCHMARK_MAIN();
