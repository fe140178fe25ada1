#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kinmix/model.hpp"

namespace kinmix {

/// Uniform velocity nodes on [-L/2, L/2] (endpoints included) with trapezoid weights.
class VelocityGrid {
public:
    VelocityGrid(double length, std::size_t nodes);

    std::size_t size() const noexcept { return nodes_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return dv_; }
    double vmin() const noexcept { return -0.5 * length_; }
    double vmax() const noexcept { return 0.5 * length_; }
    double node(std::size_t j) const noexcept { return vmin() + static_cast<double>(j) * dv_; }
    double weight(std::size_t j) const noexcept {
        return (j == 0 || j + 1 == nodes_) ? 0.5 * dv_ : dv_;
    }
    std::vector<double> nodes() const;

    double integrate(std::span<const double> f) const;
    MomentVector moments(std::span<const double> f) const;
    /// L1 distance by trapezoid quadrature.
    double l1_distance(std::span<const double> f, std::span<const double> g) const;

private:
    double length_;
    std::size_t nodes_;
    double dv_;
};

std::vector<double> sample_maxwellian(const VelocityGrid& grid, const SpeciesMoments& m,
                                      double mass_ratio);

/// Positive grid function exp(a + b v + c v^2) whose trapezoid moments equal
/// `target` to round-off (Newton on the exponent, started from the sampled
/// Maxwellian). Throws Error if the target cannot be represented on the grid.
std::vector<double> discrete_maxwellian(const VelocityGrid& grid, const MomentVector& target,
                                        double mass_ratio);

/// Grid moments of f as (n, u, T) with the species mass ratio applied to T.
SpeciesMoments grid_primitive_moments(const VelocityGrid& grid, std::span<const double> f,
                                      double mass_ratio);

/// One step of the space-homogeneous two-species BGK relaxation on a velocity
/// line, with every Maxwellian frozen at the start of the step and each species
/// integrated exactly as a linear ODE. The interspecies exchange is scaled to a
/// common factor so that density, total momentum and total energy are
/// conserved to round-off on the grid.
void relax_velocity_line(const VelocityGrid& grid, std::span<double> f1, std::span<double> f2,
                         const ValidatedParams& p, double dt);

}  // namespace kinmix
