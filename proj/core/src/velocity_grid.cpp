#include "kinmix/velocity_grid.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "kinmix/errors.hpp"

namespace kinmix {

VelocityGrid::VelocityGrid(double length, std::size_t nodes) : length_(length), nodes_(nodes) {
    if (!(length > 0.0)) throw ParameterError("velocity domain length must be positive");
    if (nodes < 3) throw ParameterError("velocity grid needs at least 3 nodes");
    dv_ = length / static_cast<double>(nodes - 1);
}

std::vector<double> VelocityGrid::nodes() const {
    std::vector<double> v(nodes_);
    for (std::size_t j = 0; j < nodes_; ++j) v[j] = node(j);
    return v;
}

double VelocityGrid::integrate(std::span<const double> f) const {
    double s = 0.0;
    for (std::size_t j = 0; j < nodes_; ++j) s += weight(j) * f[j];
    return s;
}

MomentVector VelocityGrid::moments(std::span<const double> f) const {
    MomentVector m;
    for (std::size_t j = 0; j < nodes_; ++j) {
        const double v = node(j);
        const double wf = weight(j) * f[j];
        m.n += wf;
        m.nu += wf * v;
        m.E += wf * v * v;
    }
    return m;
}

double VelocityGrid::l1_distance(std::span<const double> f, std::span<const double> g) const {
    double s = 0.0;
    for (std::size_t j = 0; j < nodes_; ++j) s += weight(j) * std::abs(f[j] - g[j]);
    return s;
}

std::vector<double> sample_maxwellian(const VelocityGrid& grid, const SpeciesMoments& m,
                                      double mass_ratio) {
    const Maxwellian M(m, mass_ratio);
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = M(grid.node(j));
    return out;
}

SpeciesMoments grid_primitive_moments(const VelocityGrid& grid, std::span<const double> f,
                                      double mass_ratio) {
    return primitive_moments(grid.moments(f), mass_ratio);
}

std::vector<double> discrete_maxwellian(const VelocityGrid& grid, const MomentVector& target,
                                        double mass_ratio) {
    const std::size_t nv = grid.size();
    std::vector<double> out(nv, 0.0);
    if (target.n == 0.0) return out;

    const SpeciesMoments prim = primitive_moments(target, mass_ratio);
    const double theta = prim.T / mass_ratio;
    if (!(target.n > 0.0) || !(theta > 0.0)) {
        throw PositivityError(
            fmt::format("discrete Maxwellian needs n > 0 and T > 0 (n={}, T={})", target.n, prim.T), 0);
    }
    const double sigma = std::sqrt(theta);
    const double log_peak = std::log(target.n / std::sqrt(2.0 * std::numbers::pi * theta));

    std::vector<double> c(nv);
    for (std::size_t j = 0; j < nv; ++j) c[j] = (grid.node(j) - prim.u) / sigma;

    // In the scaled variable c the target moments are (n, 0, n).
    const Eigen::Vector3d goal(target.n, 0.0, target.n);
    Eigen::Vector3d lambda = Eigen::Vector3d::Zero();

    for (int iter = 0; iter < 60; ++iter) {
        Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
        Eigen::Vector3d mom = Eigen::Vector3d::Zero();
        for (std::size_t j = 0; j < nv; ++j) {
            const double cj = c[j];
            const double e = log_peak - 0.5 * cj * cj + lambda[0] + lambda[1] * cj + lambda[2] * cj * cj;
            out[j] = std::exp(e);
            const double wm = grid.weight(j) * out[j];
            const double p[5] = {1.0, cj, cj * cj, cj * cj * cj, cj * cj * cj * cj};
            for (int a = 0; a < 3; ++a) {
                mom[a] += wm * p[a];
                for (int b = 0; b < 3; ++b) jac(a, b) += wm * p[a + b];
            }
        }
        const Eigen::Vector3d resid = mom - goal;
        if (resid.lpNorm<Eigen::Infinity>() <= 4e-16 * target.n) return out;
        const Eigen::Vector3d step = jac.ldlt().solve(-resid);
        if (!step.allFinite()) break;
        lambda += step;
        if (step.lpNorm<Eigen::Infinity>() < 1e-15 && iter > 3) return out;
    }
    // Newton stalls only at round-off level; accept if the residual is tiny.
    const MomentVector got = grid.moments(out);
    const double err = std::max({std::abs(got.n - target.n), std::abs(got.nu - target.nu),
                                 std::abs(got.E - target.E)});
    if (err <= 1e-12 * std::max(1.0, std::abs(target.E))) return out;
    throw Error(fmt::format("discrete Maxwellian did not converge (n={}, u={}, T={}, residual {})",
                            target.n, prim.u, prim.T, err));
}

void relax_velocity_line(const VelocityGrid& grid, std::span<double> f1, std::span<double> f2,
                         const ValidatedParams& p, double dt) {
    const double mr = p->mass_ratio();
    const MomentVector U1 = grid.moments(f1);
    const MomentVector U2 = grid.moments(f2);
    const SpeciesMoments s1 = primitive_moments(U1, 1.0);
    const SpeciesMoments s2 = primitive_moments(U2, mr);
    const ExchangeQuantities ex = exchange_quantities(s1, s2, p);

    const double a1 = self_frequency(Species::One, s1, s2, p);
    const double b1 = cross_frequency(Species::One, s1, s2, p);
    const double a2 = self_frequency(Species::Two, s1, s2, p);
    const double b2 = cross_frequency(Species::Two, s1, s2, p);
    const double rate1 = a1 + b1;
    const double rate2 = a2 + b2;
    const double phi1 = -std::expm1(-rate1 * dt) / rate1;
    const double phi2 = -std::expm1(-rate2 * dt) / rate2;
    const double phi = std::min(phi1, phi2);

    const MomentVector U12 = equilibrium_moment_vector(mixture_moments(Species::One, s1, s2, ex), 1.0);
    const MomentVector U21 = equilibrium_moment_vector(mixture_moments(Species::Two, s1, s2, ex), mr);
    const MomentVector target12 = U1 + (phi / phi1) * (U12 - U1);
    const MomentVector target21 = U2 + (phi / phi2) * (U21 - U2);

    const auto M1 = discrete_maxwellian(grid, U1, 1.0);
    const auto M12 = discrete_maxwellian(grid, target12, 1.0);
    const auto M2 = discrete_maxwellian(grid, U2, mr);
    const auto M21 = discrete_maxwellian(grid, target21, mr);

    const double keep1 = std::exp(-rate1 * dt);
    const double keep2 = std::exp(-rate2 * dt);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        f1[j] = keep1 * f1[j] + phi1 * (a1 * M1[j] + b1 * M12[j]);
        f2[j] = keep2 * f2[j] + phi2 * (a2 * M2[j] + b2 * M21[j]);
    }
}

}  // namespace kinmix
