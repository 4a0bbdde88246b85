#include <benchmark/benchmark.h>

#include "riskaverse/american/american.hpp"
#include "riskaverse/closedform/european.hpp"
#include "riskaverse/lattice/nested_pricing.hpp"
#include "riskaverse/pde/european_solver.hpp"
#include "riskaverse/risk/risk_measure.hpp"

using namespace riskaverse;

namespace {

EuroParams bench_params(double s_rho) {
    EuroParams p;
    p.x = 1.0;
    p.strike = 1.2;
    p.r = 0.03;
    p.sigma = 0.15;
    p.expiry = 1.0;
    p.s_rho = s_rho;
    return p;
}

void BM_SemiDeviationTwoPoint(benchmark::State& state) {
    const RiskSpec m = RiskSpec::semi_deviation(1.0, 0.2, false);
    double y = 1.0;
    for (auto _ : state) {
        y = 1.0 + 0.999 * (two_point_value(m, Side::bid, y + 0.1, y - 0.1, 0.51) - 1.0);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_SemiDeviationTwoPoint);

void BM_PriceNested(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BinomialTree tree = build_tree(1.0, 0.03, 0.15, 1.0, n);
    const RiskSpec measure = RiskSpec::semi_deviation(1.0, 0.5);
    const auto payoff = call_payoff(1.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(price_nested(tree, measure, payoff, Side::bid).value);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_PriceNested)->Arg(128)->Arg(512)->Arg(2048)->Complexity(benchmark::oNSquared);

void BM_ClosedFormCall(benchmark::State& state) {
    const EuroParams p = bench_params(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(call_value(p, Side::ask));
    }
}
BENCHMARK(BM_ClosedFormCall);

void BM_SolveEuropeanPde(benchmark::State& state) {
    Grid grid;
    grid.x_max = 4.8;
    grid.nx = static_cast<int>(state.range(0));
    grid.nt = static_cast<int>(state.range(0));
    const EuroParams p = bench_params(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_european(p, PayoffKind::call, Side::ask, grid));
    }
}
BENCHMARK(BM_SolveEuropeanPde)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SolveAmericanPut(benchmark::State& state) {
    Grid grid;
    grid.x_max = 4.0;
    grid.nx = static_cast<int>(state.range(0)) + 1;
    grid.nt = static_cast<int>(state.range(0));
    AmerParams p;
    p.x = 1.0;
    p.strike = 1.0;
    p.r = 0.03;
    p.sigma = 0.15;
    p.expiry = 1.0;
    p.s_rho = 0.2;
    p.kind = PayoffKind::put;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_american(p, Side::bid, grid));
    }
}
BENCHMARK(BM_SolveAmericanPut)->Arg(160)->Arg(320)->Unit(benchmark::kMillisecond);

void BM_AxiomTrials(benchmark::State& state) {
    const RiskSpec m = RiskSpec::semi_deviation(2.0, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(axiom_report(m, 50, 7));
    }
}
BENCHMARK(BM_AxiomTrials);

} // namespace

BENCHMARK_MAIN();
