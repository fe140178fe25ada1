#include "kinmix/model.hpp"

#include <fmt/format.h>

#include "kinmix/errors.hpp"

namespace kinmix {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(fmt::format("{} must be a finite positive number (got {})", name, value));
    }
}

}  // namespace

double delta_lower_bound(const MixtureParams& p) noexcept {
    const double r = p.eps() * p.m1 / p.m2;
    return (r - 1.0) / (1.0 + r);
}

double gamma_upper_bound(const MixtureParams& p) noexcept {
    const double r = p.eps() * p.m1 / p.m2;
    return p.m1 * (1.0 - p.delta) * ((1.0 + r) * p.delta + 1.0 - r);
}

ValidatedParams validate_params(const MixtureParams& p) {
    require_positive(p.m1, "m1");
    require_positive(p.m2, "m2");
    require_positive(p.nu12, "nu12");
    require_positive(p.eps1, "eps1");
    require_positive(p.epst1, "epst1");
    require_positive(p.eps2, "eps2");
    require_positive(p.epst2, "epst2");

    const double eps = p.eps();
    if (eps > 1.0) {
        throw ParameterError(fmt::format(
            "eps = epst2/epst1 = {} exceeds 1; exchange the species labels so that eps <= 1", eps));
    }
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
        throw ParameterError(fmt::format("alpha = {} outside [0, 1]", p.alpha));
    }
    const double dlo = delta_lower_bound(p);
    if (!(p.delta >= dlo && p.delta <= 1.0)) {
        throw ParameterError(fmt::format("delta = {} outside [{}, 1]", p.delta, dlo));
    }
    const double ghi = gamma_upper_bound(p);
    if (!(p.gamma >= 0.0 && p.gamma <= ghi)) {
        throw ParameterError(fmt::format("gamma = {} outside [0, {}]", p.gamma, ghi));
    }
    return ValidatedParams(p);
}

ExchangeQuantities exchange_quantities(const SpeciesMoments& s1, const SpeciesMoments& s2,
                                       const ValidatedParams& vp) noexcept {
    const MixtureParams& p = vp.get();
    const double eps = p.eps();
    const double mr12 = p.m1 / p.m2;
    const double du2 = (s1.u - s2.u) * (s1.u - s2.u);
    const double drag = mr12 * eps * (1.0 - p.delta);

    ExchangeQuantities ex;
    ex.u12 = p.delta * s1.u + (1.0 - p.delta) * s2.u;
    ex.T12 = p.alpha * s1.T + (1.0 - p.alpha) * s2.T + (p.gamma / p.m1) * du2;
    ex.u21 = (1.0 - drag) * s2.u + drag * s1.u;
    ex.T21 = (1.0 - eps * (1.0 - p.alpha)) * s2.T + eps * (1.0 - p.alpha) * s1.T +
             (eps * (1.0 - p.delta) * (mr12 * eps * (p.delta - 1.0) + p.delta + 1.0) -
              eps * p.gamma / p.m1) *
                 du2;
    return ex;
}

MomentVector equilibrium_moment_vector(const SpeciesMoments& m, double mass_ratio) noexcept {
    return {m.n, m.n * m.u, m.n * (m.T / mass_ratio + m.u * m.u)};
}

double third_flux_moment(const SpeciesMoments& m, double mass_ratio) noexcept {
    return m.n * m.u * (m.u * m.u + 3.0 * m.T / mass_ratio);
}

SpeciesMoments primitive_moments(const MomentVector& U, double mass_ratio) noexcept {
    SpeciesMoments m;
    m.n = U.n;
    m.u = U.nu / U.n;
    m.T = (U.E / U.n - m.u * m.u) * mass_ratio;
    return m;
}

double maxwellian(const SpeciesMoments& m, double mass_ratio, double v) {
    return Maxwellian(m, mass_ratio)(v);
}

Maxwellian::Maxwellian(const SpeciesMoments& m, double mass_ratio) {
    if (!(m.T > 0.0)) {
        throw ParameterError(fmt::format("Maxwellian requires T > 0 (got {})", m.T));
    }
    n_ = m.n;
    u_ = m.u;
    theta_ = m.T / mass_ratio;
    peak_ = m.n / std::sqrt(2.0 * std::numbers::pi * theta_);
    half_inv_theta_ = 0.5 / theta_;
}

SpeciesMoments mixture_moments(Species k, const SpeciesMoments& s1, const SpeciesMoments& s2,
                               const ExchangeQuantities& ex) noexcept {
    if (k == Species::One) return {s1.n, ex.u12, ex.T12};
    return {s2.n, ex.u21, ex.T21};
}

double cross_frequency(Species k, const SpeciesMoments& s1, const SpeciesMoments& s2,
                       const ValidatedParams& p) noexcept {
    if (k == Species::One) return p->nu12 * s2.n / p->epst1;
    return p->nu12 * s1.n / p->epst2;
}

double self_frequency(Species k, const SpeciesMoments& s1, const SpeciesMoments& s2,
                      const ValidatedParams& p) noexcept {
    if (k == Species::One) return p->nu12 * s1.n / p->eps1;
    return p->nu12 * s2.n / p->eps2;
}

double gaussian_central_moment(int k, double n, double theta) noexcept {
    if (k < 0 || k % 2 != 0) return 0.0;
    double r = n;
    for (int j = k - 1; j > 0; j -= 2) r *= static_cast<double>(j) * theta;
    return r;
}

}  // namespace kinmix
