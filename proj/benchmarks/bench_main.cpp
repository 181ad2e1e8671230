#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "acmdm/formfactor.hpp"
#include "acmdm/phase.hpp"
#include "acmdm/quadrature.hpp"

using namespace acmdm;

namespace {

void BM_SusyQuadrature(benchmark::State& state) {
    const SusyParams p{-1.0, 1.0};
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(susy_form_factor(p, tol).integral);
}
BENCHMARK(BM_SusyQuadrature)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMicrosecond);

// Small Chern-Simons mass: the corner peak forces deep refinement.
void BM_SusyQuadratureSmallMass(benchmark::State& state) {
    const SusyParams p{-1.0, 1e-6};
    for (auto _ : state) benchmark::DoNotOptimize(susy_form_factor(p, 1e-8).integral);
}
BENCHMARK(BM_SusyQuadratureSmallMass)->Unit(benchmark::kMillisecond);

void BM_YukawaQuadrature(benchmark::State& state) {
    YukawaParams p;
    p.q_hat2 = -1.0;
    p.m1_hat = 1.2;
    p.m2_hat = 0.7;
    p.e2 = -0.3;
    for (auto _ : state) benchmark::DoNotOptimize(yukawa_form_factor(p, 1e-9).integral);
}
BENCHMARK(BM_YukawaQuadrature)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
    const SusyParams p{-1.0, 0.5};
    const auto f = [&](double x, double y) { return susy_integrand(x, y, p); };
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mc_integrate_triangle(f, 1'000'000, 1, threads).value);
    state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

PolylinePath circle(int n, double r) {
    std::vector<Vec2> v;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        v.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return {std::move(v), true};
}

void BM_AcPhase(benchmark::State& state) {
    const auto path = circle(static_cast<int>(state.range(0)), 1.0);
    const FieldConfig config({{{0.1, 0.0}, 1.0}, {{-0.3, 0.2}, -0.5}, {{2.0, 0.0}, 0.7}});
    for (auto _ : state) benchmark::DoNotOptimize(ac_phase(path, config, 1.0, Species::spinor, 1e-8).phase);
}
BENCHMARK(BM_AcPhase)->Arg(16)->Arg(256)->Unit(benchmark::kMicrosecond);

// A charge 1e-4 from the path: near-charge splitting dominates.
void BM_LineIntegralGrazing(benchmark::State& state) {
    const auto path = circle(64, 1.0);
    const FieldConfig config({{{1.0 - 1e-4, 0.0}, 1.0}});
    for (auto _ : state) benchmark::DoNotOptimize(line_integral_dual(path, config, 1e-10).value);
}
BENCHMARK(BM_LineIntegralGrazing)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
