#include <benchmark/benchmark.h>

#include "linzip/column_order.hpp"
#include "linzip/compress.hpp"
#include "linzip/instance_io.hpp"
#include "linzip/pipeline.hpp"

using namespace linzip;

namespace {

MembershipMatrix instance(std::int64_t sets, std::uint64_t seed) {
    SyntheticParams p;
    p.sets = static_cast<std::size_t>(sets);
    p.elements = static_cast<std::size_t>(2 * sets);
    p.density = 0.35;
    p.seed = seed;
    return build_membership_matrix(generate_synthetic(p));
}

ConflictModel conflicts(std::int64_t sets, Variant v) {
    const auto m = instance(sets, 7);
    const auto tsp = build_tsp_instance(m);
    const auto ord = solve_tour_heuristic(tsp, 1).order;
    return build_conflict_graph(m, v, ord);
}

void BM_TourHeuristic(benchmark::State& state) {
    const auto tsp = build_tsp_instance(instance(state.range(0), 3));
    for (auto _ : state) benchmark::DoNotOptimize(solve_tour_heuristic(tsp, 1));
}
BENCHMARK(BM_TourHeuristic)->Arg(12)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_TourExact(benchmark::State& state) {
    const auto tsp = build_tsp_instance(instance(state.range(0), 3));
    TourResult r;
    for (auto _ : state) benchmark::DoNotOptimize(r = solve_tour_exact(tsp, std::chrono::seconds(30), 1));
    state.counters["optimal"] = r.status == SolveStatus::Optimal ? 1 : 0;
}
BENCHMARK(BM_TourExact)->Arg(12)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_Dsatur(benchmark::State& state) {
    const auto model = conflicts(state.range(0), Variant::NoAlternation);
    for (auto _ : state) benchmark::DoNotOptimize(dsatur(model.graph, kUnbounded));
}
BENCHMARK(BM_Dsatur)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMicrosecond);

void BM_RowsExact(benchmark::State& state) {
    const auto model = conflicts(state.range(0), static_cast<Variant>(state.range(1)));
    RowSolveOptions opts;
    opts.bound = 3;
    opts.timeout = std::chrono::seconds(5);
    RowAssignment a;
    for (auto _ : state) benchmark::DoNotOptimize(a = solve_rows(model, opts));
    state.counters["rows"] = static_cast<double>(a.row_count);
    state.counters["optimal"] = a.status == SolveStatus::Optimal ? 1 : 0;
}
BENCHMARK(BM_RowsExact)->ArgsProduct({{24, 48}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_MatchingB2(benchmark::State& state) {
    const auto model = conflicts(state.range(0), Variant::Disjoint);
    for (auto _ : state) benchmark::DoNotOptimize(match_pairs_b2(model.graph));
}
BENCHMARK(BM_MatchingB2)->Arg(48)->Arg(96)->Unit(benchmark::kMicrosecond);

void BM_Pipeline(benchmark::State& state) {
    SyntheticParams p;
    p.sets = 40;
    p.elements = 80;
    p.seed = 11;
    const auto sys = generate_synthetic(p);
    PipelineConfig cfg;
    cfg.variant = static_cast<Variant>(state.range(0));
    cfg.bound = 3;
    cfg.mode = SolveMode::Heuristic;
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg, sys));
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
