#include "kinmix/macrofv.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kinmix/errors.hpp"

namespace kinmix {

MomentVector maxwellian_flux(const MomentVector& U, double mass_ratio) {
    const SpeciesMoments m = primitive_moments(U, mass_ratio);
    if (!(m.T > 0.0)) throw PositivityError(fmt::format("flux of a state with T = {}", m.T), 0);
    const double theta = m.T / mass_ratio;
    return {U.nu, m.n * (theta + m.u * m.u), third_flux_moment(m, mass_ratio)};
}

double characteristic_speed(const MomentVector& U, double mass_ratio) {
    const SpeciesMoments m = primitive_moments(U, mass_ratio);
    return std::abs(m.u) + std::sqrt(3.0 * std::max(m.T, 0.0) / mass_ratio);
}

std::pair<MomentVector, MomentVector> relaxation_source(const MomentVector& U1, const MomentVector& U2,
                                                        const ValidatedParams& p) {
    const double mr = p->mass_ratio();
    const SpeciesMoments s1 = primitive_moments(U1, 1.0);
    const SpeciesMoments s2 = primitive_moments(U2, mr);
    const ExchangeQuantities ex = exchange_quantities(s1, s2, p);

    MomentVector S1 = equilibrium_moment_vector(mixture_moments(Species::One, s1, s2, ex), 1.0) - U1;
    MomentVector S2 = equilibrium_moment_vector(mixture_moments(Species::Two, s1, s2, ex), mr) - U2;
    S1.n = 0.0;
    S2.n = 0.0;
    S1 *= cross_frequency(Species::One, s1, s2, p);
    S2 *= cross_frequency(Species::Two, s1, s2, p);
    return {S1, S2};
}

MomentVector numerical_flux(const MomentVector& UL, const MomentVector& UR, double mass_ratio) {
    const double s = std::max(characteristic_speed(UL, mass_ratio), characteristic_speed(UR, mass_ratio));
    return 0.5 * (maxwellian_flux(UL, mass_ratio) + maxwellian_flux(UR, mass_ratio)) - (0.5 * s) * (UR - UL);
}

double max_stable_dt(const MacroState& state, const ValidatedParams& p, double cfl) {
    const double mr = p->mass_ratio();
    double smax = 0.0;
    for (std::size_t i = 0; i < state.cells(); ++i) {
        smax = std::max({smax, characteristic_speed(state.species1[i], 1.0),
                         characteristic_speed(state.species2[i], mr)});
    }
    return smax > 0.0 ? cfl * state.dx / smax : std::numeric_limits<double>::infinity();
}

std::pair<MomentVector, MomentVector> integrate_relaxation(const MomentVector& U1, const MomentVector& U2,
                                                           const ValidatedParams& p, double dt,
                                                           bool substep) {
    std::size_t nsub = 1;
    if (substep) {
        const double mr = p->mass_ratio();
        const SpeciesMoments s1 = primitive_moments(U1, 1.0);
        const SpeciesMoments s2 = primitive_moments(U2, mr);
        const double rate = cross_frequency(Species::One, s1, s2, p) + cross_frequency(Species::Two, s1, s2, p);
        nsub = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rate * dt / 0.5)));
    }
    const double h = dt / static_cast<double>(nsub);
    MomentVector a = U1;
    MomentVector b = U2;
    for (std::size_t s = 0; s < nsub; ++s) {
        const auto [k1a, k1b] = relaxation_source(a, b, p);
        const auto [k2a, k2b] = relaxation_source(a + (0.5 * h) * k1a, b + (0.5 * h) * k1b, p);
        const auto [k3a, k3b] = relaxation_source(a + (0.5 * h) * k2a, b + (0.5 * h) * k2b, p);
        const auto [k4a, k4b] = relaxation_source(a + h * k3a, b + h * k3b, p);
        a += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    }
    return {a, b};
}

void check_positivity(const MacroState& state, const ValidatedParams& p) {
    const double mr = p->mass_ratio();
    for (std::size_t i = 0; i < state.cells(); ++i) {
        for (int k = 0; k < 2; ++k) {
            const MomentVector& U = k == 0 ? state.species1[i] : state.species2[i];
            const SpeciesMoments m = primitive_moments(U, k == 0 ? 1.0 : mr);
            if (!(m.n > 0.0) || !(m.T > 0.0)) {
                throw PositivityError(fmt::format("species {} in cell {} lost positivity (n={}, T={}) at t={}",
                                                  k + 1, i, m.n, m.T, state.t),
                                      i);
            }
        }
    }
}

MacroState fv_step(const MacroState& state, std::span<const MomentVector> particle_flux_div1,
                   std::span<const MomentVector> particle_flux_div2, const ValidatedParams& p,
                   double dt, const FvOptions& options) {
    const std::size_t nx = state.cells();
    const double mr = p->mass_ratio();

    if (options.transport) {
        const double limit = max_stable_dt(state, p, options.cfl);
        if (dt > limit * (1.0 + 1e-12)) {
            throw CflError(fmt::format("dt = {} violates the CFL condition; need dt <= {}", dt, limit), limit);
        }
    }

    MacroState next = state;
    next.t = state.t + dt;

    if (options.transport) {
        const double ratio = dt / state.dx;
        std::vector<MomentVector> face1(nx), face2(nx);  // face i is the left face of cell i
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t l = periodic_prev(i, nx);
            face1[i] = numerical_flux(state.species1[l], state.species1[i], 1.0);
            face2[i] = numerical_flux(state.species2[l], state.species2[i], mr);
        }
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t r = periodic_next(i, nx);
            next.species1[i] -= ratio * (face1[r] - face1[i]);
            next.species2[i] -= ratio * (face2[r] - face2[i]);
        }
    }
    if (!particle_flux_div1.empty()) {
        for (std::size_t i = 0; i < nx; ++i) next.species1[i] -= dt * particle_flux_div1[i];
    }
    if (!particle_flux_div2.empty()) {
        for (std::size_t i = 0; i < nx; ++i) next.species2[i] -= dt * particle_flux_div2[i];
    }
    for (std::size_t i = 0; i < nx; ++i) {
        const auto [r1, r2] = integrate_relaxation(state.species1[i], state.species2[i], p, dt,
                                                   options.substep_sources);
        next.species1[i] += r1 - state.species1[i];
        next.species2[i] += r2 - state.species2[i];
    }
    check_positivity(next, p);
    return next;
}

}  // namespace kinmix
