#pragma once

// Space-homogeneous two-species relaxation: moment ODEs, their closed-form
// velocity and temperature decay laws, relative entropy and a direct
// velocity-grid integrator for the kinetic equations.

#include <cstddef>
#include <span>
#include <vector>

#include "kinmix/model.hpp"
#include "kinmix/velocity_grid.hpp"

namespace kinmix {

struct HomogeneousMoments {
    SpeciesMoments s1;
    SpeciesMoments s2;

    double velocity_gap_sq() const noexcept { return (s1.u - s2.u) * (s1.u - s2.u); }
    double temperature_gap() const noexcept { return s1.T - s2.T; }
};

struct DecayConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    /// Entropy decay rate: the smaller of the two total relaxation frequencies.
    double C = 0.0;
};

DecayConstants decay_constants(const HomogeneousMoments& m, const ValidatedParams& p) noexcept;

/// One classical RK4 step of the four coupled ODEs for (u1, u2, T1, T2);
/// densities are untouched.
HomogeneousMoments moment_ode_step(const HomogeneousMoments& m, const ValidatedParams& p, double dt) noexcept;

/// |u1 - u2|^2 (t) = exp(-C3 t) |u1(0) - u2(0)|^2.
double analytic_velocity_gap(double t, const HomogeneousMoments& init, const ValidatedParams& p) noexcept;

/// T1 - T2 at time t, with the C1 = C3 limit taken when |C1 - C3| < 1e-12.
double analytic_temperature_gap(double t, const HomogeneousMoments& init, const ValidatedParams& p) noexcept;

/// Trapezoid quadrature of f ln(f/M) with 0 ln 0 = 0. Samples in [-1e-14, 0)
/// count as 0; anything more negative throws Error.
double relative_entropy(const VelocityGrid& grid, std::span<const double> f, const SpeciesMoments& M,
                        double mass_ratio);

struct KineticSample {
    double t = 0.0;
    HomogeneousMoments moments;
    /// ||f_k - M_k||_1 against the Maxwellian with the grid moments of f_k.
    double l1_gap1 = 0.0;
    double l1_gap2 = 0.0;
    double entropy1 = 0.0;
    double entropy2 = 0.0;
};

/// Integrates the homogeneous kinetic system directly on the velocity grid
/// with relax_velocity_line, recording a sample at t = 0, every
/// `output_every` steps and at the final time.
std::vector<KineticSample> kinetic_homogeneous_run(const VelocityGrid& grid, std::vector<double> f1,
                                                   std::vector<double> f2, const ValidatedParams& p,
                                                   double dt, double t_end, std::size_t output_every = 1);

KineticSample kinetic_sample(const VelocityGrid& grid, std::span<const double> f1, std::span<const double> f2,
                             const ValidatedParams& p, double t);

}  // namespace kinmix
