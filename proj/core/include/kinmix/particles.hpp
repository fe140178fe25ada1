#pragma once

// Weighted-particle representation of a micro remainder g_kk. Particles sample
// the phase-space box [0, lx) x [-lv/2, lv/2] uniformly and never move in
// velocity; a particle's weight is g at its position times the quadrature
// weight lx*lv/Np.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kinmix/errors.hpp"
#include "kinmix/grid.hpp"
#include "kinmix/model.hpp"
#include "kinmix/parallel.hpp"

namespace kinmix {

struct ParticleSet {
    Species species = Species::One;
    double lx = 0.0;
    double lv = 0.0;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> w;

    std::size_t size() const noexcept { return x.size(); }
    /// lx * lv / Np.
    double quadrature_weight() const noexcept {
        return size() == 0 ? 0.0 : lx * lv / static_cast<double>(size());
    }
    double total_abs_weight() const noexcept;

    bool operator==(const ParticleSet&) const = default;
};

using PhaseSpaceFunction = std::function<double(double x, double v)>;

/// Uniform phase-space sampling from a seeded 64-bit Mersenne twister; the
/// same seed always yields a bit-identical set.
ParticleSet init_particles(const PhaseSpaceFunction& g0, const GridSpec& grid, std::size_t np,
                           std::uint64_t seed, Species species);

/// Free streaming x <- wrap(x + v dt). Throws ParameterError for dt < 0.
void push(ParticleSet& ps, double dt);

/// Per-cell moments (<g>, <v g>, <v^2 g>, <v^3 g>) by nearest-grid-point
/// assignment, i.e. sum_k w_k v_k^j / dx over the particles of each cell.
struct DepositedMoments {
    std::vector<double> m0, m1, m2, m3;
};
DepositedMoments deposit(const ParticleSet& ps, const GridSpec& grid);

/// Per-cell raw sums (sum w, sum w v, sum w v^2), no 1/dx factor.
struct CellSums {
    std::vector<double> s0, s1, s2;
};
CellSums cell_sums(const ParticleSet& ps, const GridSpec& grid);

/// Particle indices grouped by cell, in increasing index order within a cell.
struct CellIndex {
    std::vector<std::size_t> offsets;  // size nx + 1
    std::vector<std::size_t> order;

    std::span<const std::size_t> cell(std::size_t c) const noexcept {
        return {order.data() + offsets[c], offsets[c + 1] - offsets[c]};
    }
};
CellIndex build_cell_index(const ParticleSet& ps, const GridSpec& grid);

/// Exponential (Duhamel) weight update
///     w <- w exp(-lambda dt) + (1 - exp(-lambda dt))/lambda * S(x, v) * h
/// with lambda the per-cell damping rate and h the quadrature weight; forward
/// Euler when lambda = 0. Throws ParameterError for a negative rate.
template <class Source>
void update_weights(ParticleSet& ps, const GridSpec& grid, Source&& source,
                    std::span<const double> damping, double dt) {
    for (double lam : damping) {
        if (lam < 0.0 || !std::isfinite(lam)) throw ParameterError("damping rate must be >= 0");
    }
    std::vector<double> keep(damping.size());
    std::vector<double> gain(damping.size());
    for (std::size_t c = 0; c < damping.size(); ++c) {
        const double lam = damping[c];
        keep[c] = std::exp(-lam * dt);
        gain[c] = lam > 0.0 ? -std::expm1(-lam * dt) / lam : dt;
    }
    const double h = ps.quadrature_weight();
    const auto np = static_cast<std::ptrdiff_t>(ps.size());
#pragma omp parallel for schedule(static) num_threads(worker_threads())
    for (std::ptrdiff_t k = 0; k < np; ++k) {
        const std::size_t c = grid.cell_of(ps.x[k]);
        ps.w[k] = ps.w[k] * keep[c] + gain[c] * source(ps.x[k], ps.v[k]) * h;
    }
}

struct MatchReport {
    std::size_t skipped_cells = 0;
};

/// Per-cell matching: subtracts h [a0 + a1 psi1 + a2 psi2](v_k) M_k(v_k) from
/// the weights, with (a0, a1, a2) solving the 3x3 system that cancels the
/// cell's discrete sums (sum w, sum w v, sum w v^2). Cells whose system is
/// singular are left untouched and counted in the report.
MatchReport match(ParticleSet& ps, const GridSpec& grid, std::span<const SpeciesMoments> maxwellians,
                  double mass_ratio);

}  // namespace kinmix
