#include "kinmix/driver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "kinmix/errors.hpp"
#include "kinmix/homogeneous.hpp"
#include "kinmix/projection.hpp"
#include "kinmix/reference.hpp"

namespace kinmix {

namespace {

constexpr std::uint64_t kSecondSpeciesSeedOffset = 0x9E3779B97F4A7C15ULL;

// Coefficients of Pi(phi)/M in powers of (v - u).
std::array<double, 4> power_coefficients(const ProjectionCoeffs& pc) {
    const double theta = pc.weight.theta();
    return {pc.c0 - 0.5 * pc.c2, pc.c1 / std::sqrt(theta), 0.5 * pc.c2 / theta, 0.0};
}

// Non-stiff micro source of one cell, S(v) = M(v) Q(v - u) + b Mkj(v).
struct CellSource {
    Maxwellian M;
    Maxwellian Mkj;
    double b = 0.0;
    std::array<double, 4> q{};

    double operator()(double v) const noexcept {
        const double c = v - M.u();
        return M(v) * (q[0] + c * (q[1] + c * (q[2] + c * q[3]))) + b * Mkj(v);
    }
};

double centered(const std::vector<double>& a, std::size_t i, double inv_2dx) {
    const std::size_t n = a.size();
    return (a[periodic_next(i, n)] - a[periodic_prev(i, n)]) * inv_2dx;
}

void advance_particles(ParticleSet& ps, const GridSpec& grid, Species k, const DepositedMoments& dep,
                       const std::vector<SpeciesMoments>& s1, const std::vector<SpeciesMoments>& s2,
                       const ValidatedParams& p, double dt, bool transport, std::size_t& skipped) {
    const std::size_t nx = grid.nx;
    const double mr = p->mass_ratio(k);
    const auto& own = k == Species::One ? s1 : s2;
    const double inv_2dx = 0.5 / grid.dx();

    std::vector<double> n(nx), u(nx), T(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        n[i] = own[i].n;
        u[i] = own[i].u;
        T[i] = own[i].T;
    }

    std::vector<CellSource> sources(nx);
    std::vector<double> damping(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const SpeciesMoments& Mk = own[i];
        CellSource& src = sources[i];
        src.M = Maxwellian(Mk, mr);
        src.q = {};

        if (transport) {
            // -(1 - Pi)(v d_x M)
            const StreamingMaxwellian stream(Mk, mr, centered(n, i, inv_2dx), centered(u, i, inv_2dx),
                                             centered(T, i, inv_2dx));
            const auto proj = power_coefficients(project_from_moments(Mk, mr, stream.central_moments()));
            for (int j = 0; j < 4; ++j) src.q[j] += proj[j] - stream.polynomial()[j];

            // + Pi(v d_x g)
            const CentralMoments dg = center_moments(centered(dep.m1, i, inv_2dx), centered(dep.m2, i, inv_2dx),
                                                     centered(dep.m3, i, inv_2dx), Mk.u);
            const auto pg = power_coefficients(project_from_moments(Mk, mr, dg));
            for (int j = 0; j < 4; ++j) src.q[j] += pg[j];
        }

        // + b (Mkj - Pi(Mkj))
        const ExchangeQuantities ex = exchange_quantities(s1[i], s2[i], p);
        src.b = cross_frequency(k, s1[i], s2[i], p);
        src.Mkj = Maxwellian(mixture_moments(k, s1[i], s2[i], ex), mr);
        const auto pc = power_coefficients(project_cross_maxwellian(Mk, ex, k, mr));
        for (int j = 0; j < 4; ++j) src.q[j] -= src.b * pc[j];

        damping[i] = self_frequency(k, s1[i], s2[i], p) + src.b;
    }

    update_weights(
        ps, grid, [&](double x, double v) { return sources[grid.cell_of(x)](v); }, damping, dt);
    skipped += match(ps, grid, own, mr).skipped_cells;
}

TimeSeriesRow macro_row(double t, const std::vector<SpeciesMoments>& s1, const std::vector<SpeciesMoments>& s2,
                        double dx, double mr) {
    TimeSeriesRow r;
    r.t = t;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        r.u_gap_inf = std::max(r.u_gap_inf, std::abs(s1[i].u - s2[i].u));
        r.T_gap_inf = std::max(r.T_gap_inf, std::abs(s1[i].T - s2[i].T));
        const MomentVector U1 = equilibrium_moment_vector(s1[i], 1.0);
        const MomentVector U2 = equilibrium_moment_vector(s2[i], mr);
        r.mass1 += U1.n * dx;
        r.mass2 += U2.n * dx;
        r.momentum += (U1.nu + mr * U2.nu) * dx;
        r.energy += (U1.E + mr * U2.E) * dx;
    }
    r.u_gap_sq = r.u_gap_inf * r.u_gap_inf;
    return r;
}

}  // namespace

std::vector<SpeciesMoments> cell_moments(const MacroState& macro, Species species, const ValidatedParams& p) {
    const auto& U = species == Species::One ? macro.species1 : macro.species2;
    const double mr = p->mass_ratio(species);
    std::vector<SpeciesMoments> out(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) out[i] = primitive_moments(U[i], mr);
    return out;
}

MicroMacroState initialize(const InitialCondition& ic, const GridSpec& grid, std::size_t np1, std::size_t np2,
                           std::uint64_t seed, const ValidatedParams& p) {
    MicroMacroState s;
    s.grid = grid;
    s.macro.dx = grid.dx();
    s.macro.species1.resize(grid.nx);
    s.macro.species2.resize(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double a = static_cast<double>(i) * grid.dx();
        s.macro.species1[i] = ic.average1(a, a + grid.dx());
        s.macro.species2[i] = ic.average2(a, a + grid.dx());
    }
    check_positivity(s.macro, p);

    const auto s1 = cell_moments(s.macro, Species::One, p);
    const auto s2 = cell_moments(s.macro, Species::Two, p);
    std::vector<Maxwellian> M1(grid.nx), M2(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        M1[i] = Maxwellian(s1[i], 1.0);
        M2[i] = Maxwellian(s2[i], p->mass_ratio());
    }
    const PhaseSpaceFunction g1 = [&](double x, double v) { return ic.f1(x, v) - M1[grid.cell_of(x)](v); };
    const PhaseSpaceFunction g2 = [&](double x, double v) { return ic.f2(x, v) - M2[grid.cell_of(x)](v); };
    s.ps1 = init_particles(g1, grid, np1, seed, Species::One);
    s.ps2 = init_particles(g2, grid, np2, seed + kSecondSpeciesSeedOffset, Species::Two);
    s.skipped_cells += match(s.ps1, grid, s1, 1.0).skipped_cells;
    s.skipped_cells += match(s.ps2, grid, s2, p->mass_ratio()).skipped_cells;
    return s;
}

void step(MicroMacroState& state, const ValidatedParams& p, double dt, const StepOptions& options) {
    const GridSpec& grid = state.grid;
    const std::size_t nx = grid.nx;

    const DepositedMoments dep1 = deposit(state.ps1, grid);
    const DepositedMoments dep2 = deposit(state.ps2, grid);
    if (options.transport) {
        push(state.ps1, dt);
        push(state.ps2, dt);
    }

    std::vector<MomentVector> flux1, flux2;
    if (options.transport) {
        const double inv_2dx = 0.5 / grid.dx();
        flux1.resize(nx);
        flux2.resize(nx);
        for (std::size_t i = 0; i < nx; ++i) {
            flux1[i] = {centered(dep1.m1, i, inv_2dx), centered(dep1.m2, i, inv_2dx), centered(dep1.m3, i, inv_2dx)};
            flux2[i] = {centered(dep2.m1, i, inv_2dx), centered(dep2.m2, i, inv_2dx), centered(dep2.m3, i, inv_2dx)};
        }
    }
    FvOptions fv;
    fv.cfl = options.cfl;
    fv.transport = options.transport;
    state.macro = fv_step(state.macro, flux1, flux2, p, dt, fv);

    const auto s1 = cell_moments(state.macro, Species::One, p);
    const auto s2 = cell_moments(state.macro, Species::Two, p);
    advance_particles(state.ps1, grid, Species::One, dep1, s1, s2, p, dt, options.transport, state.skipped_cells);
    advance_particles(state.ps2, grid, Species::Two, dep2, s1, s2, p, dt, options.transport, state.skipped_cells);
    ++state.steps;
}

Diagnostics diagnostics(const MicroMacroState& state, const ValidatedParams& p) {
    const auto s1 = cell_moments(state.macro, Species::One, p);
    const auto s2 = cell_moments(state.macro, Species::Two, p);
    const TimeSeriesRow r = macro_row(state.macro.t, s1, s2, state.macro.dx, p->mass_ratio());
    Diagnostics d;
    d.u_gap_inf = r.u_gap_inf;
    d.T_gap_inf = r.T_gap_inf;
    d.u_gap = s1[0].u - s2[0].u;
    d.T_gap = s1[0].T - s2[0].T;
    d.mass1 = r.mass1;
    d.mass2 = r.mass2;
    d.momentum = r.momentum;
    d.energy = r.energy;
    d.abs_weight1 = state.ps1.total_abs_weight();
    d.abs_weight2 = state.ps2.total_abs_weight();
    for (const ParticleSet* ps : {&state.ps1, &state.ps2}) {
        const DepositedMoments dep = deposit(*ps, state.grid);
        for (std::size_t i = 0; i < state.grid.nx; ++i) {
            d.matching_residual =
                std::max({d.matching_residual, std::abs(dep.m0[i]), std::abs(dep.m1[i]), std::abs(dep.m2[i])});
        }
    }
    return d;
}

Snapshot snapshot(const MicroMacroState& state, Species species, const ValidatedParams& p) {
    const GridSpec& grid = state.grid;
    const ParticleSet& ps = species == Species::One ? state.ps1 : state.ps2;
    const auto moments = cell_moments(state.macro, species, p);
    const double mr = p->mass_ratio(species);
    const double bin = grid.lv / static_cast<double>(grid.nv);
    const double vmin = -0.5 * grid.lv;

    Snapshot s;
    s.x.resize(grid.nx);
    s.v.resize(grid.nv);
    s.f.assign(grid.nx * grid.nv, 0.0);
    for (std::size_t i = 0; i < grid.nx; ++i) s.x[i] = grid.cell_center(i);
    for (std::size_t j = 0; j < grid.nv; ++j) s.v[j] = vmin + (static_cast<double>(j) + 0.5) * bin;

    const double scale = 1.0 / (grid.dx() * bin);
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::size_t i = grid.cell_of(ps.x[k]);
        const auto j = std::min(static_cast<std::size_t>(std::max((ps.v[k] - vmin) / bin, 0.0)), grid.nv - 1);
        s.f[i * grid.nv + j] += ps.w[k] * scale;
    }
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const Maxwellian M(moments[i], mr);
        for (std::size_t j = 0; j < grid.nv; ++j) s.f[i * grid.nv + j] += M(s.v[j]);
    }
    return s;
}

double reconstructed_entropy(const MicroMacroState& state, const ValidatedParams& p) {
    const GridSpec& grid = state.grid;
    const double bin = grid.lv / static_cast<double>(grid.nv);
    double total = 0.0;
    for (Species k : {Species::One, Species::Two}) {
        const Snapshot s = snapshot(state, k, p);
        const auto moments = cell_moments(state.macro, k, p);
        const double mr = p->mass_ratio(k);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const Maxwellian M(moments[i], mr);
            const double log_peak = std::log(M.n() / std::sqrt(2.0 * std::numbers::pi * M.theta()));
            double h = 0.0;
            for (std::size_t j = 0; j < grid.nv; ++j) {
                const double f = s.f[i * grid.nv + j];
                if (f <= 0.0) continue;
                const double c = s.v[j] - M.u();
                h += bin * f * (std::log(f) - (log_peak - 0.5 * c * c / M.theta()));
            }
            total += h * grid.dx() / grid.lx;
        }
    }
    return total;
}

RunResult run(const RunConfig& config, const std::filesystem::path& out_dir) {
    const ValidatedParams p = validate_params(config.mixture);
    const InitialCondition ic = make_initial_condition(config.preset, config.beta, p->mass_ratio());
    const auto steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
    const bool write = !out_dir.empty();
    if (write) {
        std::filesystem::create_directories(out_dir);
        write_file_atomic(out_dir / "config.json", to_json(config));
    }
    const auto snapshot_due = [&](std::size_t n) {
        return n == 0 || n == steps || (config.output_every > 0 && n % config.output_every == 0);
    };
    const double mr = p->mass_ratio();

    RunResult result;
    std::size_t n = 0;
    try {
        if (config.mode == RunMode::Reference) {
            GridDistribution g = dvm_initialize(ic, config.domain);
            for (;; ++n) {
                const auto s1 = dvm_moments(g, Species::One, 1.0);
                const auto s2 = dvm_moments(g, Species::Two, mr);
                result.rows.push_back(macro_row(g.t, s1, s2, g.grid.dx(), mr));
                if (write && snapshot_due(n)) {
                    const VelocityGrid vg = g.velocity_grid();
                    Snapshot snap;
                    for (std::size_t i = 0; i < g.grid.nx; ++i) snap.x.push_back(g.grid.cell_center(i));
                    snap.v = vg.nodes();
                    snap.f = g.f1;
                    write_snapshot(out_dir / fmt::format("snapshot_s1_{:06}.csv", n), snap);
                    snap.f = g.f2;
                    write_snapshot(out_dir / fmt::format("snapshot_s2_{:06}.csv", n), snap);
                }
                if (n == steps) break;
                g = dvm_step(g, p, config.dt);
            }
        } else {
            const bool homogeneous = config.mode == RunMode::Homogeneous;
            GridSpec grid = config.domain;
            if (homogeneous) grid.nx = 1;
            StepOptions opts;
            opts.transport = !homogeneous;
            MicroMacroState state = initialize(ic, grid, config.np1, config.np2, config.seed, p);
            HomogeneousMoments init;
            init.s1 = primitive_moments(state.macro.species1[0], 1.0);
            init.s2 = primitive_moments(state.macro.species2[0], mr);
            for (;; ++n) {
                const Diagnostics d = diagnostics(state, p);
                TimeSeriesRow r;
                r.t = state.macro.t;
                r.u_gap_inf = d.u_gap_inf;
                r.T_gap_inf = d.T_gap_inf;
                r.u_gap_sq = d.u_gap_inf * d.u_gap_inf;
                r.mass1 = d.mass1;
                r.mass2 = d.mass2;
                r.momentum = d.momentum;
                r.energy = d.energy;
                r.abs_weight1 = d.abs_weight1;
                r.abs_weight2 = d.abs_weight2;
                if (homogeneous) {
                    r.T_gap = d.T_gap;
                    r.analytic_u_gap_sq = analytic_velocity_gap(r.t, init, p);
                    r.analytic_T_gap = analytic_temperature_gap(r.t, init, p);
                    r.entropy = reconstructed_entropy(state, p);
                }
                result.rows.push_back(r);
                if (write && snapshot_due(n)) {
                    write_snapshot(out_dir / fmt::format("snapshot_s1_{:06}.csv", n), snapshot(state, Species::One, p));
                    write_snapshot(out_dir / fmt::format("snapshot_s2_{:06}.csv", n), snapshot(state, Species::Two, p));
                }
                if (n == steps) break;
                step(state, p, config.dt, opts);
            }
        }
    } catch (const Error& e) {
        throw Error(fmt::format("step {}: {}", n + 1, e.what()));
    }
    result.steps = steps;
    if (write) write_timeseries(out_dir / "timeseries.csv", result.rows);
    return result;
}

}  // namespace kinmix
