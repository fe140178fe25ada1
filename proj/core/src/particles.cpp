#include "kinmix/particles.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Dense>

namespace kinmix {

namespace {

double unit_uniform(std::mt19937_64& rng) {
    // 53 random mantissa bits; independent of the standard library's distributions.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double ParticleSet::total_abs_weight() const noexcept {
    double s = 0.0;
    for (double wk : w) s += std::abs(wk);
    return s;
}

ParticleSet init_particles(const PhaseSpaceFunction& g0, const GridSpec& grid, std::size_t np,
                           std::uint64_t seed, Species species) {
    if (np == 0) throw ParameterError("particle count must be positive");
    ParticleSet ps;
    ps.species = species;
    ps.lx = grid.lx;
    ps.lv = grid.lv;
    ps.x.resize(np);
    ps.v.resize(np);
    ps.w.resize(np);

    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < np; ++k) {
        ps.x[k] = grid.wrap(unit_uniform(rng) * grid.lx);
        ps.v[k] = (unit_uniform(rng) - 0.5) * grid.lv;
    }
    const double h = ps.quadrature_weight();
    for (std::size_t k = 0; k < np; ++k) ps.w[k] = g0(ps.x[k], ps.v[k]) * h;
    return ps;
}

void push(ParticleSet& ps, double dt) {
    if (dt < 0.0) throw ParameterError("push requires dt >= 0");
    if (dt == 0.0) return;
    GridSpec box;
    box.lx = ps.lx;
    const auto np = static_cast<std::ptrdiff_t>(ps.size());
#pragma omp parallel for schedule(static) num_threads(worker_threads())
    for (std::ptrdiff_t k = 0; k < np; ++k) ps.x[k] = box.wrap(ps.x[k] + ps.v[k] * dt);
}

DepositedMoments deposit(const ParticleSet& ps, const GridSpec& grid) {
    DepositedMoments d;
    d.m0.assign(grid.nx, 0.0);
    d.m1.assign(grid.nx, 0.0);
    d.m2.assign(grid.nx, 0.0);
    d.m3.assign(grid.nx, 0.0);
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::size_t c = grid.cell_of(ps.x[k]);
        const double v = ps.v[k];
        const double wv = ps.w[k] * v;
        d.m0[c] += ps.w[k];
        d.m1[c] += wv;
        d.m2[c] += wv * v;
        d.m3[c] += wv * v * v;
    }
    const double inv_dx = 1.0 / grid.dx();
    for (std::size_t c = 0; c < grid.nx; ++c) {
        d.m0[c] *= inv_dx;
        d.m1[c] *= inv_dx;
        d.m2[c] *= inv_dx;
        d.m3[c] *= inv_dx;
    }
    return d;
}

CellSums cell_sums(const ParticleSet& ps, const GridSpec& grid) {
    CellSums s;
    s.s0.assign(grid.nx, 0.0);
    s.s1.assign(grid.nx, 0.0);
    s.s2.assign(grid.nx, 0.0);
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::size_t c = grid.cell_of(ps.x[k]);
        const double wv = ps.w[k] * ps.v[k];
        s.s0[c] += ps.w[k];
        s.s1[c] += wv;
        s.s2[c] += wv * ps.v[k];
    }
    return s;
}

CellIndex build_cell_index(const ParticleSet& ps, const GridSpec& grid) {
    CellIndex idx;
    idx.offsets.assign(grid.nx + 1, 0);
    std::vector<std::size_t> cell(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) {
        cell[k] = grid.cell_of(ps.x[k]);
        ++idx.offsets[cell[k] + 1];
    }
    for (std::size_t c = 0; c < grid.nx; ++c) idx.offsets[c + 1] += idx.offsets[c];
    idx.order.resize(ps.size());
    std::vector<std::size_t> fill(idx.offsets.begin(), idx.offsets.end() - 1);
    for (std::size_t k = 0; k < ps.size(); ++k) idx.order[fill[cell[k]]++] = k;
    return idx;
}

namespace {

// Returns false if the cell's Gram system is singular.
bool match_cell(ParticleSet& ps, std::span<const std::size_t> members, const Maxwellian& M,
                double h, std::vector<double>& scratch) {
    const double sigma = std::sqrt(M.theta());
    const double u = M.u();
    scratch.resize(members.size());

    Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double v = ps.v[members[i]];
        const double c = (v - u) / sigma;
        const double hm = h * M(v);
        scratch[i] = hm;
        const double p[5] = {1.0, c, c * c, c * c * c, c * c * c * c};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) gram(a, b) += hm * p[a + b];
    }
    const Eigen::LDLT<Eigen::Matrix3d> ldlt(gram);
    const auto D = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || !(D.minCoeff() > 1e-13 * D.cwiseAbs().maxCoeff())) {
        return false;
    }

    // One solve plus one refinement pass against the round-off of the first.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::size_t k = members[i];
            const double c = (ps.v[k] - u) / sigma;
            rhs[0] += ps.w[k];
            rhs[1] += ps.w[k] * c;
            rhs[2] += ps.w[k] * c * c;
        }
        if (rhs.lpNorm<Eigen::Infinity>() == 0.0) break;
        const Eigen::Vector3d a = ldlt.solve(rhs);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::size_t k = members[i];
            const double c = (ps.v[k] - u) / sigma;
            ps.w[k] -= scratch[i] * (a[0] + a[1] * c + a[2] * c * c);
        }
    }
    return true;
}

}  // namespace

MatchReport match(ParticleSet& ps, const GridSpec& grid, std::span<const SpeciesMoments> maxwellians,
                  double mass_ratio) {
    if (maxwellians.size() != grid.nx) throw ParameterError("match needs one Maxwellian per cell");
    const CellIndex idx = build_cell_index(ps, grid);
    const double h = ps.quadrature_weight();

    MatchReport report;
    const auto nx = static_cast<std::ptrdiff_t>(grid.nx);
#pragma omp parallel num_threads(worker_threads())
    {
        std::vector<double> scratch;
        std::size_t skipped = 0;
#pragma omp for schedule(static)
        for (std::ptrdiff_t c = 0; c < nx; ++c) {
            const auto members = idx.cell(static_cast<std::size_t>(c));
            bool nonzero = false;
            for (std::size_t k : members) nonzero = nonzero || ps.w[k] != 0.0;
            if (!nonzero) continue;
            const Maxwellian M(maxwellians[c], mass_ratio);
            if (!match_cell(ps, members, M, h, scratch)) ++skipped;
        }
#pragma omp critical
        report.skipped_cells += skipped;
    }
    return report;
}

}  // namespace kinmix
