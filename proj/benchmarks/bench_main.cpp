#include <benchmark/benchmark.h>

#include <random>

#include "holoalg/catalog.hpp"
#include "holoalg/contour.hpp"
#include "holoalg/cr_system.hpp"
#include "holoalg/decomposition.hpp"
#include "holoalg/series.hpp"

using namespace holoalg;

namespace {

Element random_element(const AlgebraPtr& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vector v(static_cast<Eigen::Index>(a->dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cd(nd(rng), nd(rng));
  return a->element(v);
}

void BM_Multiply(benchmark::State& state) {
  const auto a = catalog::truncated_polynomial(std::size_t(state.range(0)));
  const Element x = random_element(a, 1), y = random_element(a, 2);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_Multiply)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ArtinDecompose(benchmark::State& state) {
  auto a = catalog::split_complex();
  for (int k = 1; k < state.range(0); ++k) a = catalog::direct_sum(a, catalog::dual_numbers());
  for (auto _ : state) benchmark::DoNotOptimize(artin_decompose(a));
}
BENCHMARK(BM_ArtinDecompose)->Arg(1)->Arg(3)->Arg(6);

void BM_GeometricSeries(benchmark::State& state) {
  const auto d = catalog::dual_numbers();
  const PowerSeries g(make_setting(Morphism::identity(d)), d->zero(),
                      CoefficientSequence::rule([d](std::size_t) { return d->one(); }, 100000));
  const Element z = d->element(Vector{{0.5, 1e3}});
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(g, z));
}
BENCHMARK(BM_GeometricSeries);

void BM_GcruResidual(benchmark::State& state) {
  const auto d = catalog::dual_numbers();
  const PowerSeries p(make_setting(Morphism::identity(d)), d->zero(),
                      CoefficientSequence::finite({d->one(), d->zero(), d->basis(1), d->one()}));
  const FunctionSampler f([p](const Element& z) { return evaluate_polynomial(p, z); });
  const auto phi = Morphism::identity(d);
  const Element z = random_element(d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(gcru_residual(f, phi, z, 1e-4));
}
BENCHMARK(BM_GcruResidual);

void BM_IndexQuadrature(benchmark::State& state) {
  const auto d = catalog::dual_numbers();
  const Setting s = make_setting(Morphism::identity(d));
  const Cycle c(Path::circle(d->zero(), 1.0));
  const Element z = d->element(Vector{{cd(0.2, 0.1), cd(3.0, -1.0)}});
  for (auto _ : state) benchmark::DoNotOptimize(index_quadrature(c, z, s.phi));
}
BENCHMARK(BM_IndexQuadrature);

void BM_IndexSpectral(benchmark::State& state) {
  const auto d = catalog::dual_numbers();
  const Setting s = make_setting(Morphism::identity(d));
  const Cycle c(Path::circle(d->zero(), 1.0));
  const Element z = d->element(Vector{{cd(0.2, 0.1), cd(3.0, -1.0)}});
  for (auto _ : state) benchmark::DoNotOptimize(index_spectral(c, z, s));
}
BENCHMARK(BM_IndexSpectral);

}  // namespace
BENCHMARK_MAIN();
