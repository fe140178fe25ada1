#pragma once

// Discrete-velocity solver for the full two-species BGK system on a periodic
// (x, v) grid: first-order upwind transport followed by the exponential
// relaxation of each velocity line.

#include <cstddef>
#include <span>
#include <vector>

#include "kinmix/grid.hpp"
#include "kinmix/model.hpp"
#include "kinmix/presets.hpp"
#include "kinmix/velocity_grid.hpp"

namespace kinmix {

struct GridDistribution {
    GridSpec grid;
    /// Row-major nx x nv samples: f[i * nv + j] at cell i, velocity node j.
    std::vector<double> f1;
    std::vector<double> f2;
    double t = 0.0;
    /// Most negative sample produced by the last step (0 if none).
    double min_value = 0.0;

    VelocityGrid velocity_grid() const { return {grid.lv, grid.nv}; }
    std::span<double> line(std::vector<double>& f, std::size_t i) const { return {f.data() + i * grid.nv, grid.nv}; }
    std::span<const double> line(const std::vector<double>& f, std::size_t i) const {
        return {f.data() + i * grid.nv, grid.nv};
    }
};

/// Cell averages of the preset data at the velocity nodes.
GridDistribution dvm_initialize(const InitialCondition& ic, const GridSpec& grid);

/// Largest stable step dx / max|v|.
double dvm_max_dt(const GridSpec& grid) noexcept;

/// One split step. Throws CflError when dt > dx / max|v|.
GridDistribution dvm_step(const GridDistribution& state, const ValidatedParams& p, double dt);

/// Per-cell (n, u, T) of one species.
std::vector<SpeciesMoments> dvm_moments(const GridDistribution& state, Species species, double mass_ratio);

}  // namespace kinmix
