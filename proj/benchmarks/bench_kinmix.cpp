#include <benchmark/benchmark.h>

#include "kinmix/driver.hpp"
#include "kinmix/homogeneous.hpp"
#include "kinmix/particles.hpp"
#include "kinmix/presets.hpp"
#include "kinmix/reference.hpp"

using namespace kinmix;

namespace {

MixtureParams unit_knudsen(double m2) {
    MixtureParams p;
    p.m2 = m2;
    return p;
}

GridSpec paper_grid() {
    GridSpec g;
    g.nx = 128;
    g.nv = 512;
    return g;
}

}  // namespace

static void BM_Push(benchmark::State& state) {
    const GridSpec g = paper_grid();
    ParticleSet ps = init_particles([](double, double v) { return v; }, g, static_cast<std::size_t>(state.range(0)),
                                    1, Species::One);
    for (auto _ : state) {
        push(ps, 1e-2);
        benchmark::DoNotOptimize(ps.x.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Push)->Arg(100000)->Arg(500000);

static void BM_Match(benchmark::State& state) {
    const GridSpec g = paper_grid();
    const ParticleSet base = init_particles([](double x, double v) { return std::sin(x) * v * v; }, g,
                                            static_cast<std::size_t>(state.range(0)), 2, Species::Two);
    const std::vector<SpeciesMoments> M(g.nx, SpeciesMoments{1.0, 0.0, 1.0});
    for (auto _ : state) {
        state.PauseTiming();
        ParticleSet ps = base;
        state.ResumeTiming();
        benchmark::DoNotOptimize(match(ps, g, M, 1.0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Match)->Arg(100000)->Arg(500000);

static void BM_DriverStep(benchmark::State& state) {
    const ValidatedParams p = validate_params(unit_knudsen(1.0));
    const auto np = static_cast<std::size_t>(state.range(0));
    MicroMacroState s = initialize(make_initial_condition("cosine-perturbed", 0.1, 1.0), paper_grid(), np, np, 3, p);
    for (auto _ : state) step(s, p, 1e-2);
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_DriverStep)->Arg(50000)->Arg(500000)->Unit(benchmark::kMillisecond);

static void BM_RelaxVelocityLine(benchmark::State& state) {
    const ValidatedParams p = validate_params(unit_knudsen(1.5));
    const VelocityGrid grid(20.0, static_cast<std::size_t>(state.range(0)));
    const InitialCondition ic = make_initial_condition("v4-maxwellian", 0.0, 1.5);
    std::vector<double> f1(grid.size()), f2(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        f1[j] = ic.f1(0.0, grid.node(j));
        f2[j] = ic.f2(0.0, grid.node(j));
    }
    for (auto _ : state) relax_velocity_line(grid, f1, f2, p, 1e-3);
}
BENCHMARK(BM_RelaxVelocityLine)->Arg(512)->Arg(2048);

static void BM_ReferenceStep(benchmark::State& state) {
    const ValidatedParams p = validate_params(unit_knudsen(1.0));
    GridSpec g;
    g.nx = 32;
    g.nv = 64;
    GridDistribution d = dvm_initialize(make_initial_condition("cosine-perturbed", 0.1, 1.0), g);
    const double dt = dvm_max_dt(g);
    for (auto _ : state) d = dvm_step(d, p, dt);
}
BENCHMARK(BM_ReferenceStep);
BENCHMARK_MAIN();
