#pragma once

// First-order finite-volume solver for the moment equations of the two
// Maxwellian parts: Rusanov fluxes for the Gaussian-closure transport,
// particle-flux coupling and interspecies relaxation sources, on a periodic
// grid.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kinmix/grid.hpp"
#include "kinmix/model.hpp"

namespace kinmix {

struct MacroState {
    std::vector<MomentVector> species1;
    std::vector<MomentVector> species2;
    double dx = 1.0;
    double t = 0.0;

    std::size_t cells() const noexcept { return species1.size(); }
};

/// (n u, n (T/mr + u^2), n u (u^2 + 3 T/mr)). Throws PositivityError for T <= 0.
MomentVector maxwellian_flux(const MomentVector& U, double mass_ratio);

/// |u| + sqrt(3 T/mr).
double characteristic_speed(const MomentVector& U, double mass_ratio);

/// Interspecies relaxation sources (<m(M12 - M1)>, <m(M21 - M2)>) scaled by
/// their collision frequencies.
std::pair<MomentVector, MomentVector> relaxation_source(const MomentVector& U1, const MomentVector& U2,
                                                        const ValidatedParams& p);

/// Rusanov flux 1/2 (F(UL) + F(UR)) - 1/2 s (UR - UL).
MomentVector numerical_flux(const MomentVector& UL, const MomentVector& UR, double mass_ratio);

struct FvOptions {
    double cfl = 0.5;
    bool transport = true;
    /// Split the relaxation source into RK4 sub-steps with rate*dt <= 0.5 each.
    bool substep_sources = true;
};

/// Largest dt allowed by the CFL condition for the current state.
double max_stable_dt(const MacroState& state, const ValidatedParams& p, double cfl);

/// One step
///     U <- U - dt (F_{i+1/2} - F_{i-1/2})/dx - dt P_i + [R(U, dt) - U],
/// where P is the particle flux divergence and R integrates the relaxation
/// source from the beginning-of-step state. Empty particle-flux spans mean
/// zero. Throws CflError when dt exceeds the stable step and PositivityError
/// when a reconstructed temperature or density is non-positive.
MacroState fv_step(const MacroState& state, std::span<const MomentVector> particle_flux_div1,
                   std::span<const MomentVector> particle_flux_div2, const ValidatedParams& p,
                   double dt, const FvOptions& options = {});

/// Integrates only the relaxation sources over dt (RK4, optionally sub-stepped).
std::pair<MomentVector, MomentVector> integrate_relaxation(const MomentVector& U1, const MomentVector& U2,
                                                           const ValidatedParams& p, double dt,
                                                           bool substep);

/// Throws PositivityError if any cell has n <= 0 or T <= 0.
void check_positivity(const MacroState& state, const ValidatedParams& p);

}  // namespace kinmix
