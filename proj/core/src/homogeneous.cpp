#include "kinmix/homogeneous.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kinmix/errors.hpp"

namespace kinmix {

namespace {

struct Rates {
    double b1;  // species 1 cross frequency
    double b2;  // species 2 cross frequency
};

Rates cross_rates(const HomogeneousMoments& m, const ValidatedParams& p) noexcept {
    return {cross_frequency(Species::One, m.s1, m.s2, p), cross_frequency(Species::Two, m.s1, m.s2, p)};
}

struct Derivative {
    double du1, du2, dT1, dT2;
};

Derivative rhs(const HomogeneousMoments& m, const ValidatedParams& p, const Rates& r) noexcept {
    const double eps = p->eps();
    const double d = p->delta;
    const double g = p->gamma / p->m1;
    const double mr = p->mass_ratio();
    const double du = m.s1.u - m.s2.u;
    const double du2 = du * du;
    const double dT = m.s1.T - m.s2.T;
    return {
        r.b1 * (1.0 - d) * (-du),
        r.b2 * eps * (1.0 - d) / mr * du,
        r.b1 * ((1.0 - p->alpha) * (-dT) + ((1.0 - d) * (1.0 - d) + g) * du2),
        r.b2 * (eps * (1.0 - p->alpha) * dT + eps * (1.0 - d * d - g) * du2),
    };
}

HomogeneousMoments advance(HomogeneousMoments m, const Derivative& k, double h) noexcept {
    m.s1.u += h * k.du1;
    m.s2.u += h * k.du2;
    m.s1.T += h * k.dT1;
    m.s2.T += h * k.dT2;
    return m;
}

}  // namespace

DecayConstants decay_constants(const HomogeneousMoments& m, const ValidatedParams& p) noexcept {
    const Rates r = cross_rates(m, p);
    const double eps = p->eps();
    const double d = p->delta;
    const double g = p->gamma / p->m1;
    DecayConstants c;
    c.C1 = (1.0 - p->alpha) * (r.b1 + eps * r.b2);
    c.C2 = r.b1 * ((1.0 - d) * (1.0 - d) + g) - eps * r.b2 * (1.0 - d * d - g);
    c.C3 = 2.0 * (1.0 - d) * (r.b1 + eps * r.b2 / p->mass_ratio());
    c.C = std::min(self_frequency(Species::One, m.s1, m.s2, p) + r.b1,
                   self_frequency(Species::Two, m.s1, m.s2, p) + r.b2);
    return c;
}

HomogeneousMoments moment_ode_step(const HomogeneousMoments& m, const ValidatedParams& p, double dt) noexcept {
    const Rates r = cross_rates(m, p);
    const Derivative k1 = rhs(m, p, r);
    const Derivative k2 = rhs(advance(m, k1, 0.5 * dt), p, r);
    const Derivative k3 = rhs(advance(m, k2, 0.5 * dt), p, r);
    const Derivative k4 = rhs(advance(m, k3, dt), p, r);
    const Derivative sum{k1.du1 + 2.0 * k2.du1 + 2.0 * k3.du1 + k4.du1,
                         k1.du2 + 2.0 * k2.du2 + 2.0 * k3.du2 + k4.du2,
                         k1.dT1 + 2.0 * k2.dT1 + 2.0 * k3.dT1 + k4.dT1,
                         k1.dT2 + 2.0 * k2.dT2 + 2.0 * k3.dT2 + k4.dT2};
    return advance(m, sum, dt / 6.0);
}

double analytic_velocity_gap(double t, const HomogeneousMoments& init, const ValidatedParams& p) noexcept {
    return std::exp(-decay_constants(init, p).C3 * t) * init.velocity_gap_sq();
}

double analytic_temperature_gap(double t, const HomogeneousMoments& init, const ValidatedParams& p) noexcept {
    const DecayConstants c = decay_constants(init, p);
    const double decay = std::exp(-c.C1 * t);
    const double diff = c.C1 - c.C3;
    const double growth = std::abs(diff) < 1e-12 ? t : std::expm1(diff * t) / diff;
    return decay * (init.temperature_gap() + c.C2 * growth * init.velocity_gap_sq());
}

double relative_entropy(const VelocityGrid& grid, std::span<const double> f, const SpeciesMoments& M,
                        double mass_ratio) {
    const Maxwellian ref(M, mass_ratio);
    const double log_peak = std::log(ref.n() / std::sqrt(2.0 * std::numbers::pi * ref.theta()));
    double h = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double fj = f[j];
        if (fj < -1e-14) {
            throw Error(fmt::format("relative entropy of a negative sample f[{}] = {}", j, fj));
        }
        if (fj <= 0.0) continue;
        const double c = grid.node(j) - ref.u();
        const double log_m = log_peak - 0.5 * c * c / ref.theta();
        h += grid.weight(j) * fj * (std::log(fj) - log_m);
    }
    return h;
}

KineticSample kinetic_sample(const VelocityGrid& grid, std::span<const double> f1, std::span<const double> f2,
                             const ValidatedParams& p, double t) {
    const double mr = p->mass_ratio();
    KineticSample s;
    s.t = t;
    s.moments.s1 = grid_primitive_moments(grid, f1, 1.0);
    s.moments.s2 = grid_primitive_moments(grid, f2, mr);
    const auto M1 = sample_maxwellian(grid, s.moments.s1, 1.0);
    const auto M2 = sample_maxwellian(grid, s.moments.s2, mr);
    s.l1_gap1 = grid.l1_distance(f1, M1);
    s.l1_gap2 = grid.l1_distance(f2, M2);
    s.entropy1 = relative_entropy(grid, f1, s.moments.s1, 1.0);
    s.entropy2 = relative_entropy(grid, f2, s.moments.s2, mr);
    return s;
}

std::vector<KineticSample> kinetic_homogeneous_run(const VelocityGrid& grid, std::vector<double> f1,
                                                   std::vector<double> f2, const ValidatedParams& p,
                                                   double dt, double t_end, std::size_t output_every) {
    if (!(dt > 0.0)) throw ParameterError("time step must be positive");
    if (f1.size() != grid.size() || f2.size() != grid.size()) {
        throw ParameterError("distribution size does not match the velocity grid");
    }
    const auto steps = static_cast<std::size_t>(std::llround(std::max(t_end, 0.0) / dt));
    const std::size_t every = std::max<std::size_t>(output_every, 1);

    std::vector<KineticSample> out;
    out.push_back(kinetic_sample(grid, f1, f2, p, 0.0));
    for (std::size_t n = 1; n <= steps; ++n) {
        relax_velocity_line(grid, f1, f2, p, dt);
        if (n % every == 0 || n == steps) {
            out.push_back(kinetic_sample(grid, f1, f2, p, static_cast<double>(n) * dt));
        }
    }
    return out;
}

}  // namespace kinmix
