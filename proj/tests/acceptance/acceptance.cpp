// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//     kinmix_acceptance            all criteria
//     kinmix_acceptance 3 5        only criteria 3 and 5

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "kinmix/config.hpp"
#include "kinmix/driver.hpp"
#include "kinmix/homogeneous.hpp"
#include "kinmix/presets.hpp"
#include "kinmix/reference.hpp"
#include "kinmix/velocity_grid.hpp"

using namespace kinmix;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "VIOLATED ") + what;
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

MixtureParams knudsen(double eps1, double epst1, double eps2, double epst2, double m2) {
    MixtureParams p;
    p.m2 = m2;
    p.eps1 = eps1;
    p.epst1 = epst1;
    p.eps2 = eps2;
    p.epst2 = epst2;
    return p;
}

GridSpec paper_domain(std::size_t nx, std::size_t nv = 512) { return {4.0 * std::numbers::pi, nx, 20.0, nv}; }

HomogeneousMoments macro_moments(const MicroMacroState& s, const ValidatedParams& p) {
    return {primitive_moments(s.macro.species1[0], 1.0), primitive_moments(s.macro.species2[0], p->mass_ratio())};
}

std::size_t steps_for(double t_end, double dt) { return static_cast<std::size_t>(std::llround(t_end / dt)); }

// Worst relative deviation of the ODE and particle homogeneous runs from the
// analytic velocity and temperature laws on [0, t_end].
struct HomogeneousErrors {
    double ode_u = 0.0;
    double ode_T = 0.0;
    double particle_u = 0.0;
    double particle_T = 0.0;
    double mass_change = 0.0;
    double momentum_drift = 0.0;  // per unit time
    double energy_drift = 0.0;    // per unit time
    double seconds = 0.0;
};

HomogeneousErrors homogeneous_errors(const std::string& preset, const MixtureParams& mp, double t_end) {
    const ValidatedParams p = validate_params(mp);
    const double dt = 1e-4;
    const std::size_t steps = steps_for(t_end, dt);
    const InitialCondition ic = make_initial_condition(preset, 0.0, p->mass_ratio());
    HomogeneousMoments init{primitive_moments(ic.average1(0, 1), 1.0),
                            primitive_moments(ic.average2(0, 1), p->mass_ratio())};

    HomogeneousErrors e;
    const auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };

    HomogeneousMoments m = init;
    for (std::size_t n = 1; n <= steps; ++n) {
        m = moment_ode_step(m, p, dt);
        const double t = static_cast<double>(n) * dt;
        e.ode_u = std::max(e.ode_u, rel(m.velocity_gap_sq(), analytic_velocity_gap(t, init, p)));
        if (std::abs(m.temperature_gap()) > 1e-4) {
            e.ode_T = std::max(e.ode_T, rel(m.temperature_gap(), analytic_temperature_gap(t, init, p)));
        }
    }

    Stopwatch clock;
    GridSpec grid = paper_domain(1);
    MicroMacroState s = initialize(ic, grid, 10000, 10000, 2024, p);
    const Diagnostics d0 = diagnostics(s, p);
    StepOptions homogeneous;
    homogeneous.transport = false;
    for (std::size_t n = 1; n <= steps; ++n) {
        step(s, p, dt, homogeneous);
        const double t = static_cast<double>(n) * dt;
        const HomogeneousMoments got = macro_moments(s, p);
        if (got.velocity_gap_sq() > 1e-6) {
            e.particle_u = std::max(e.particle_u, rel(got.velocity_gap_sq(), analytic_velocity_gap(t, init, p)));
        }
        if (std::abs(got.temperature_gap()) > 1e-4) {
            e.particle_T = std::max(e.particle_T, rel(got.temperature_gap(), analytic_temperature_gap(t, init, p)));
        }
    }
    e.seconds = clock.seconds();
    const Diagnostics d1 = diagnostics(s, p);
    e.mass_change = std::max(std::abs(d1.mass1 - d0.mass1), std::abs(d1.mass2 - d0.mass2));
    e.momentum_drift = std::abs(d1.momentum - d0.momentum) / t_end;
    e.energy_drift = std::abs(d1.energy - d0.energy) / t_end;
    return e;
}

Outcome criterion1() {
    Outcome o;
    const HomogeneousErrors e =
        homogeneous_errors("maxwellian-maxwellian", knudsen(0.05, 0.05, 0.05, 0.05, 1.5), 0.3);
    o.require(e.ode_u <= 1e-3, fmt::format("ODE |u1-u2|^2 rel err {:.3g} <= 1e-3", e.ode_u));
    o.require(e.particle_u <= 0.05, fmt::format("particle rel err {:.3g} <= 5%", e.particle_u));
    o.require(e.seconds <= 60.0, fmt::format("particle run {:.1f}s <= 60s", e.seconds));
    return o;
}

Outcome criterion2() {
    Outcome o;
    struct Case {
        const char* preset;
        MixtureParams params;
        const char* label;
    };
    const std::vector<Case> cases{
        {"maxwellian-maxwellian", knudsen(0.05, 0.05, 0.05, 0.05, 1.5), "Kn 0.05"},
        {"maxwellian-maxwellian", knudsen(0.01, 0.01, 0.01, 0.01, 1.5), "Kn 0.01"},
        {"maxwellian-maxwellian-t1-0.08", knudsen(1, 1, 1, 1, 1.5), "Kn 1, T1=0.08"},
        {"maxwellian-maxwellian-t1-0.08", knudsen(1, 1, 1, 0.05, 1.5), "Kn (1,1,1,0.05), T1=0.08"},
    };
    for (const Case& c : cases) {
        const HomogeneousErrors e = homogeneous_errors(c.preset, c.params, 0.3);
        o.require(e.ode_T <= 2e-3, fmt::format("{}: ODE T-gap rel err {:.3g} <= 2e-3", c.label, e.ode_T));
        o.require(e.particle_T <= 0.05, fmt::format("{}: particle {:.3g} <= 5%", c.label, e.particle_T));
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    const ValidatedParams p = validate_params(knudsen(1, 1, 1, 1, 1.5));
    const VelocityGrid grid(20.0, 512);
    const InitialCondition ic = make_initial_condition("v4-maxwellian", 0.0, p->mass_ratio());
    std::vector<double> f1(grid.size()), f2(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        f1[j] = ic.f1(0.0, grid.node(j));
        f2[j] = ic.f2(0.0, grid.node(j));
    }
    const auto run = kinetic_homogeneous_run(grid, f1, f2, p, 1e-2, 5.0, 1);
    const double C = decay_constants(run.front().moments, p).C;
    const double h0 = run.front().entropy1 + run.front().entropy2;

    double worst_ratio = 0.0;
    double worst_increase = -1e300;
    for (std::size_t k = 0; k < run.size(); ++k) {
        const KineticSample& s = run[k];
        const double bound = 4.0 * std::exp(-0.5 * C * s.t) * std::sqrt(h0);
        worst_ratio = std::max(worst_ratio, (s.l1_gap1 + s.l1_gap2) / bound);
        if (k > 0) {
            const double dh = (s.entropy1 + s.entropy2) - (run[k - 1].entropy1 + run[k - 1].entropy2);
            worst_increase = std::max(worst_increase, dh);
        }
    }
    o.require(h0 > 0.0, fmt::format("initial relative entropy {:.6g} > 0", h0));
    o.require(worst_ratio <= 1.0, fmt::format("max L1 gap / bound {:.3g} <= 1 over {} outputs", worst_ratio, run.size()));
    o.require(worst_increase <= 1e-10, fmt::format("max entropy increase per step {:.3g} <= 1e-10", worst_increase));
    return o;
}

RunConfig cosine_config(double beta, const MixtureParams& mp, std::size_t nx, std::size_t np) {
    RunConfig c = preset_config("cosine-perturbed");
    c.beta = beta;
    c.mixture = mp;
    c.domain = paper_domain(nx);
    c.np1 = c.np2 = np;
    return c;
}

MicroMacroState start(const RunConfig& c, const ValidatedParams& p) {
    return initialize(make_initial_condition(c.preset, c.beta, p->mass_ratio()), c.domain, c.np1, c.np2, c.seed, p);
}

// Shared by criteria 4 and 5: the general run whose matching and
// conservation are audited.
struct GeneralAudit {
    double worst_residual = 0.0;
    std::size_t steps = 0;
    double mass_rel_change = 0.0;
    double momentum_drift = 0.0;
    double energy_drift = 0.0;
    double seconds = 0.0;
};

const GeneralAudit& general_audit() {
    static const GeneralAudit audit = [] {
        GeneralAudit a;
        Stopwatch clock;
        const RunConfig c = cosine_config(0.1, knudsen(1, 1, 1, 1, 1.0), 128, 500000);
        const ValidatedParams p = validate_params(c.mixture);
        MicroMacroState s = start(c, p);
        const Diagnostics d0 = diagnostics(s, p);
        a.worst_residual = d0.matching_residual;
        a.steps = 20;
        for (std::size_t n = 0; n < a.steps; ++n) {
            step(s, p, c.dt);
            a.worst_residual = std::max(a.worst_residual, diagnostics(s, p).matching_residual);
        }
        const Diagnostics d1 = diagnostics(s, p);
        const double t = s.macro.t;
        a.mass_rel_change = std::max(std::abs(d1.mass1 - d0.mass1) / d0.mass1, std::abs(d1.mass2 - d0.mass2) / d0.mass2);
        a.momentum_drift = std::abs(d1.momentum - d0.momentum) / t;
        a.energy_drift = std::abs(d1.energy - d0.energy) / t;
        a.seconds = clock.seconds();
        return a;
    }();
    return audit;
}

Outcome criterion4() {
    Outcome o;
    const GeneralAudit& a = general_audit();
    o.require(a.worst_residual <= 1e-12,
              fmt::format("max deposited |sum w v^j|, j<3, over {} steps and 128 cells: {:.3g} <= 1e-12", a.steps,
                          a.worst_residual));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const HomogeneousErrors h =
        homogeneous_errors("maxwellian-maxwellian", knudsen(0.05, 0.05, 0.05, 0.05, 1.5), 0.3);
    o.require(h.mass_change == 0.0, fmt::format("homogeneous mass change {:.3g} == 0", h.mass_change));
    o.require(h.momentum_drift <= 1e-6, fmt::format("homogeneous momentum drift {:.3g}/t <= 1e-6", h.momentum_drift));
    o.require(h.energy_drift <= 1e-6, fmt::format("homogeneous energy drift {:.3g}/t <= 1e-6", h.energy_drift));
    const GeneralAudit& a = general_audit();
    o.require(a.mass_rel_change <= 1e-13, fmt::format("general relative mass change {:.3g} <= 1e-13", a.mass_rel_change));
    o.require(a.momentum_drift <= 1e-3, fmt::format("general momentum drift {:.3g}/t <= 1e-3", a.momentum_drift));
    o.require(a.energy_drift <= 1e-3, fmt::format("general energy drift {:.3g}/t <= 1e-3", a.energy_drift));
    return o;
}

// Relative L1 distance over x; velocities are compared against the L1 norm of
// the thermal speed, since u itself passes through zero.
struct MomentErrors {
    double n = 0.0;
    double u = 0.0;
    double T = 0.0;
    double worst() const { return std::max({n, u, T}); }
};

MomentErrors moment_errors(const std::vector<SpeciesMoments>& got, const std::vector<SpeciesMoments>& want,
                           double mass_ratio) {
    double dn = 0, du = 0, dT = 0, nn = 0, nc = 0, nT = 0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        dn += std::abs(got[i].n - want[i].n);
        du += std::abs(got[i].u - want[i].u);
        dT += std::abs(got[i].T - want[i].T);
        nn += std::abs(want[i].n);
        nc += std::sqrt(want[i].T / mass_ratio);
        nT += std::abs(want[i].T);
    }
    return {dn / nn, du / nc, dT / nT};
}

Outcome criterion6() {
    Outcome o;
    Stopwatch clock;
    RunConfig c = cosine_config(0.1, knudsen(1, 1, 1, 1, 1.0), 32, 500000);
    c.domain.nv = 64;
    const ValidatedParams p = validate_params(c.mixture);
    const double t_end = 1.0;

    MicroMacroState s = start(c, p);
    const std::size_t mm_steps = steps_for(t_end, c.dt);
    for (std::size_t n = 0; n < mm_steps; ++n) step(s, p, c.dt);

    RunConfig rc = c;
    rc.mode = RunMode::Reference;
    const auto ref_steps = static_cast<std::size_t>(std::ceil(t_end / dvm_max_dt(c.domain)));
    rc.dt = t_end / static_cast<double>(ref_steps);
    rc.t_end = t_end;
    GridDistribution g = dvm_initialize(make_initial_condition(c.preset, c.beta, 1.0), c.domain);
    for (std::size_t n = 0; n < ref_steps; ++n) g = dvm_step(g, p, rc.dt);

    for (Species k : {Species::One, Species::Two}) {
        const double mr = p->mass_ratio(k);
        const MomentErrors e = moment_errors(cell_moments(s.macro, k, p), dvm_moments(g, k, mr), mr);
        o.require(e.worst() <= 0.05, fmt::format("species {}: L1 rel n {:.3g}, u {:.3g}, T {:.3g} <= 5%",
                                                 static_cast<int>(k), e.n, e.u, e.T));
    }
    const double secs = clock.seconds();
    o.require(secs <= 120.0, fmt::format("runtime {:.1f}s <= 120s", secs));
    return o;
}

Outcome criterion7() {
    Outcome o;
    const MixtureParams mp = knudsen(1e-2, 1000, 1e-2, 1000, 1.0);
    const ValidatedParams p = validate_params(mp);
    const double t_end = 6.0;

    RunConfig big = cosine_config(1e-2, mp, 128, 500000);
    RunConfig small = cosine_config(1e-2, mp, 128, 5000);
    MicroMacroState a = start(big, p);
    MicroMacroState b = start(small, p);
    const double w0 = a.ps2.total_abs_weight();
    double w1 = 0.0;
    const std::size_t steps = steps_for(t_end, big.dt);
    const std::size_t at_one = steps_for(1.0, big.dt);
    for (std::size_t n = 1; n <= steps; ++n) {
        step(a, p, big.dt);
        step(b, p, small.dt);
        if (n == at_one) w1 = a.ps2.total_abs_weight();
    }
    o.require(w1 * 10.0 <= w0, fmt::format("sum|w| of g22: T=0 {:.4g}, T=1 {:.4g} (ratio {:.3g} >= 10)", w0, w1, w0 / w1));
    const MomentErrors e = moment_errors(cell_moments(b.macro, Species::Two, p), cell_moments(a.macro, Species::Two, p),
                                         p->mass_ratio());
    o.require(e.worst() <= 0.05,
              fmt::format("f2 moments at T=6, Np=5e3 vs 5e5: n {:.3g}, u {:.3g}, T {:.3g} <= 5%", e.n, e.u, e.T));
    return o;
}

Outcome criterion8() {
    Outcome o;
    {
        const MixtureParams mp = knudsen(1000, 1000, 1000, 1000, 1.0);
        const ValidatedParams p = validate_params(mp);
        const RunConfig c = cosine_config(0.1, mp, 128, 50000);
        MicroMacroState s = start(c, p);
        const double gap0 = diagnostics(s, p).u_gap_inf;
        const std::size_t steps = steps_for(60.0, c.dt);
        for (std::size_t n = 0; n < steps; ++n) step(s, p, c.dt);
        const double gap = diagnostics(s, p).u_gap_inf;
        o.require(gap > 0.5 * gap0,
                  fmt::format("Kn 1000: ||u1-u2||inf at T=60 {:.4g} > 50% of initial {:.4g}", gap, gap0));
    }
    {
        const MixtureParams mp = knudsen(1e-2, 1e-2, 1e-2, 1e-2, 1.0);
        const ValidatedParams p = validate_params(mp);
        const RunConfig c = cosine_config(1e-2, mp, 128, 500000);
        MicroMacroState s = start(c, p);
        const Diagnostics d0 = diagnostics(s, p);
        const std::size_t steps = steps_for(0.5, c.dt);
        for (std::size_t n = 0; n < steps; ++n) step(s, p, c.dt);
        const Diagnostics d1 = diagnostics(s, p);
        o.require(d1.u_gap_inf <= 0.1 * d0.u_gap_inf,
                  fmt::format("Kn 0.01: ||u1-u2||inf {:.4g} -> {:.4g} (>= 90% drop)", d0.u_gap_inf, d1.u_gap_inf));
        o.require(d1.T_gap_inf <= 0.1 * d0.T_gap_inf,
                  fmt::format("Kn 0.01: ||T1-T2||inf {:.4g} -> {:.4g} (>= 90% drop)", d0.T_gap_inf, d1.T_gap_inf));
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"velocity decay law", criterion1},
        {"temperature decay law", criterion2},
        {"entropy bound and monotone relative entropy", criterion3},
        {"matching exactness", criterion4},
        {"conservation audit", criterion5},
        {"agreement with the discrete-velocity reference", criterion6},
        {"fluid-limit weight decay and particle-count independence", criterion7},
        {"regime phenomenology", criterion8},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty()) {
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
    }

    bool all = true;
    for (int id : selected) {
        if (id < 1 || id > static_cast<int>(criteria.size())) {
            fmt::print("FAIL criterion {}: no such criterion\n", id);
            all = false;
            continue;
        }
        const auto& [name, fn] = criteria[static_cast<std::size_t>(id - 1)];
        Stopwatch clock;
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = fmt::format("exception: {}", e.what());
        }
        fmt::print("{} criterion {} ({}): {} [{:.1f}s]\n", out.pass ? "PASS" : "FAIL", id, name, out.detail,
                   clock.seconds());
        std::fflush(stdout);
        all = all && out.pass;
    }
    return all ? 0 : 1;
}
