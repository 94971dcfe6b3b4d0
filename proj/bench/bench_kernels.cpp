// Serial reference path against the OpenMP path for each data-parallel kernel.
// The second benchmark argument selects the path: 0 = Exec::Serial, 1 = Exec::Parallel.

#include <benchmark/benchmark.h>

#include <cmath>

#include "advwave/kinetics.hpp"
#include "advwave/oracle.hpp"
#include "advwave/parallel.hpp"
#include "advwave/photodetect.hpp"
#include "advwave/radiometry.hpp"

using namespace advwave;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_SphereIntegrate(benchmark::State& st) {
    auto f = [](const Vec3& n) { return std::exp(n.x) * (1 + n.z * n.z) + n.y; };
    int order = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(sphere_integrate(f, 1.0, order, exec_of(st)));
}

void BM_DispersionChange(benchmark::State& st) {
    auto p = DipoleParams::from_rate(static_cast<double>(st.range(0)), 1.0, {0, 0, 1});
    ChargeParams c;
    c.r0 = {1.0 / 3, 0, 0};
    auto grid = dispersion_grid(10.0, p);
    for (auto _ : st) benchmark::DoNotOptimize(dispersion_change(grid, p, c, exec_of(st)).cumTotal.back());
}

void BM_PosDispChange(benchmark::State& st) {
    auto p = DipoleParams::from_rate(static_cast<double>(st.range(0)), 1.0, {0, 0, 1});
    ChargeParams c;
    c.r0 = {0.5, 0, 0};
    PosDispOptions opt;
    opt.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(posdisp_change(3.0, p, c, 0.1, opt).dipolePart);
}

void BM_PropagateN2(benchmark::State& st) {
    auto p = DipoleParams::from_rate(1000, 1.0, {0, 0, 1});
    auto g = build_grid(p, static_cast<int>(st.range(0)), 50);
    SectorState s = SectorState::excited(g);
    s.windowLo = 0;
    s.windowCount = g.count;
    s.amp_e1.assign(g.count, cplx{});
    s.amp_g2.assign(static_cast<std::size_t>(g.count) * (g.count + 1) / 2, cplx{});
    s.amp_e1[g.count / 2] = 1;
    OracleOptions opt;
    opt.exec = exec_of(st);
    double dt = max_oracle_step(g);
    for (auto _ : st) benchmark::DoNotOptimize(propagate(s, g, p, 20 * dt, dt, opt).norm2_n2());
}

void BM_SuppressionReport(benchmark::State& st) {
    auto cfg = DetectorConfig::identical({1.0, 0, 0}, DipoleParams::from_rate(100, 1.0, {0, 0, 1}));
    std::vector<double> grid;
    for (int i = 0; i < st.range(0); ++i) grid.push_back(12.0 * i / (st.range(0) - 1));
    for (auto _ : st) benchmark::DoNotOptimize(suppression_report(cfg, grid, exec_of(st)).maxRatio);
}

}  // namespace

BENCHMARK(BM_SphereIntegrate)->ArgsProduct({{32, 128}, {0, 1}});
BENCHMARK(BM_DispersionChange)->ArgsProduct({{10, 100}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PosDispChange)->ArgsProduct({{10, 30}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropagateN2)->ArgsProduct({{200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuppressionReport)->ArgsProduct({{101, 401}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
