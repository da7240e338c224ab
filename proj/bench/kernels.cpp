// Serial versus OpenMP timings of the system assembly, field evaluation and domain audit.
#include <benchmark/benchmark.h>

#include <vector>

#include "wavebound/validation.hpp"

using namespace wavebound;

namespace {

Execution exec_of(const benchmark::State& s) { return s.range(1) ? Execution::parallel : Execution::serial; }

const BodyCurve& body()
{
    static const BodyCurve b = build_body(ShapeSpec{});
    return b;
}

BoundaryData sources() { return BoundaryData{{}, SourceField{{{{0.4, 2.3}, 1.0}, {{-0.3, 1.8}, cplx(0, 2)}}}, {}}; }

void BM_Assemble(benchmark::State& state)
{
    const int N = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_matrix(body(), 1.0, N, exec_of(state)));
    state.SetLabel(exec_of(state) == Execution::parallel ? "openmp" : "serial");
}

void BM_Evaluate(benchmark::State& state)
{
    static const SolutionField sol = assemble_and_solve(body(), 1.0, sources(), 128);
    std::vector<Vec2> pts;
    for (int i = 0; int(pts.size()) < state.range(0); ++i) {
        const Vec2 x{-8.0 + 16.0 * (i % 997) / 997.0, 0.1 + 0.01 * (i % 300)};
        if (!body().contains(x) && body().distance(x) > 0.05) pts.push_back(x);
    }
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_many(sol, pts, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * int64_t(pts.size()));
    state.SetLabel(exec_of(state) == Execution::parallel ? "openmp" : "serial");
}

void BM_Audit(benchmark::State& state)
{
    static const SolutionField sol = assemble_and_solve(body(), 1.0, sources(), 64);
    static const ScatteringResult sc = scattering_coefficients(sol);
    AuditOptions opt;
    opt.R = double(state.range(0));
    opt.execution = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(audit_field(sol, sc, opt));
    state.SetLabel(exec_of(state) == Execution::parallel ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_Assemble)->ArgsProduct({{128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->ArgsProduct({{2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Audit)->ArgsProduct({{60}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
