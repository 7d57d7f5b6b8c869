#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "orlicz/bogovskii.hpp"
#include "orlicz/infsup.hpp"
#include "orlicz/negative_norm.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

const StarDomain& disk() {
  static const StarDomain D = StarDomain::disk({0, 0}, 1, {{0, 0}, 0.5});
  return D;
}

SampledField radial(int n) {
  return SampledField::sample(grid_domain(disk(), n), 1,
                              [](Point2 p, double* v) { v[0] = std::hypot(p.x, p.y) - 2.0 / 3.0; });
}

void BM_Conjugate(benchmark::State& state) {
  const auto A = YoungFunction::zygmund(1, 2);
  for (auto _ : state) {
    const auto At = conjugate(A);
    benchmark::DoNotOptimize(At(3.0));
  }
}
BENCHMARK(BM_Conjugate)->Unit(benchmark::kMillisecond);

void BM_LuxemburgNorm(benchmark::State& state) {
  const auto u = radial(static_cast<int>(state.range(0)));
  const auto A = YoungFunction::exponential(1);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(u, A));
}
BENCHMARK(BM_LuxemburgNorm)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_BogovskiiField(benchmark::State& state) {
  const auto f = radial(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bogovskii_field(f, disk()).divergence_residual);
}
BENCHMARK(BM_BogovskiiField)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_NegNormLower(benchmark::State& state) {
  const auto dom = grid_domain(StarDomain::rectangle({0, 0}, {1, 1}, {{0.5, 0.5}, 0.25}), 32);
  const auto u = SampledField::sample(dom, 1, [](Point2 p, double* v) { v[0] = p.x < 0.5 ? 1.0 : -1.0; });
  const auto F = TestFamily::dyadic(dom, static_cast<int>(state.range(0)));
  const auto A = YoungFunction::power(2);
  for (auto _ : state) benchmark::DoNotOptimize(neg_norm_lower(u, A, F).value);
}
BENCHMARK(BM_NegNormLower)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_InfSupL2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FESpacePair V(std::make_shared<const Triangulation>(triangulate_square(n)), 2, 0);
  const auto P2 = YoungFunction::power(2);
  for (auto _ : state) benchmark::DoNotOptimize(compute_infsup(V, P2, P2).value);
}
BENCHMARK(BM_InfSupL2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
