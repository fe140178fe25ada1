#include "kinmix/reference.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kinmix/errors.hpp"
#include "kinmix/parallel.hpp"

namespace kinmix {

namespace {

void upwind(const GridSpec& grid, const VelocityGrid& vg, const std::vector<double>& in,
            std::vector<double>& out, double dt) {
    const std::size_t nx = grid.nx;
    const std::size_t nv = grid.nv;
    const double ratio = dt / grid.dx();
    for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t l = periodic_prev(i, nx);
        const std::size_t r = periodic_next(i, nx);
        for (std::size_t j = 0; j < nv; ++j) {
            const double v = vg.node(j);
            const double c = v * ratio;
            const double fi = in[i * nv + j];
            out[i * nv + j] = v >= 0.0 ? fi - c * (fi - in[l * nv + j]) : fi - c * (in[r * nv + j] - fi);
        }
    }
}

// Composite Simpson average of f(., v) over [a, b].
double cell_average(const PhaseSpaceFunction& f, double a, double b, double v) {
    constexpr int kIntervals = 16;
    const double h = (b - a) / kIntervals;
    double s = f(a, v) + f(b, v);
    for (int m = 1; m < kIntervals; ++m) s += (m % 2 == 1 ? 4.0 : 2.0) * f(a + m * h, v);
    return s * h / 3.0 / (b - a);
}

}  // namespace

GridDistribution dvm_initialize(const InitialCondition& ic, const GridSpec& grid) {
    GridDistribution g;
    g.grid = grid;
    g.f1.resize(grid.nx * grid.nv);
    g.f2.resize(grid.nx * grid.nv);
    const VelocityGrid vg = g.velocity_grid();
    const double dx = grid.dx();
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double a = static_cast<double>(i) * dx;
        for (std::size_t j = 0; j < grid.nv; ++j) {
            g.f1[i * grid.nv + j] = cell_average(ic.f1, a, a + dx, vg.node(j));
            g.f2[i * grid.nv + j] = cell_average(ic.f2, a, a + dx, vg.node(j));
        }
    }
    return g;
}

double dvm_max_dt(const GridSpec& grid) noexcept { return grid.dx() / (0.5 * grid.lv); }

GridDistribution dvm_step(const GridDistribution& state, const ValidatedParams& p, double dt) {
    const GridSpec& grid = state.grid;
    const double limit = dvm_max_dt(grid);
    if (dt > limit * (1.0 + 1e-12)) {
        throw CflError(fmt::format("dt = {} violates the upwind CFL condition; need dt <= {}", dt, limit), limit);
    }
    const VelocityGrid vg = state.velocity_grid();

    GridDistribution next;
    next.grid = grid;
    next.t = state.t + dt;
    next.f1.resize(state.f1.size());
    next.f2.resize(state.f2.size());
    upwind(grid, vg, state.f1, next.f1, dt);
    upwind(grid, vg, state.f2, next.f2, dt);

    const auto nx = static_cast<std::ptrdiff_t>(grid.nx);
#pragma omp parallel for schedule(static) num_threads(worker_threads())
    for (std::ptrdiff_t i = 0; i < nx; ++i) {
        const auto c = static_cast<std::size_t>(i);
        relax_velocity_line(vg, next.line(next.f1, c), next.line(next.f2, c), p, dt);
    }
    const double lo = std::min(*std::min_element(next.f1.begin(), next.f1.end()),
                               *std::min_element(next.f2.begin(), next.f2.end()));
    next.min_value = std::min(lo, 0.0);
    return next;
}

std::vector<SpeciesMoments> dvm_moments(const GridDistribution& state, Species species, double mass_ratio) {
    const VelocityGrid vg = state.velocity_grid();
    const auto& f = species == Species::One ? state.f1 : state.f2;
    std::vector<SpeciesMoments> out(state.grid.nx);
    for (std::size_t i = 0; i < state.grid.nx; ++i) {
        out[i] = grid_primitive_moments(vg, state.line(f, i), mass_ratio);
    }
    return out;
}

}  // namespace kinmix
