#include "kinmix/projection.hpp"

#include <cmath>

#include <fmt/format.h>

#include "kinmix/errors.hpp"

namespace kinmix {

CentralMoments center_moments(double raw0, double raw1, double raw2, double u) noexcept {
    return {raw0, raw1 - u * raw0, raw2 - 2.0 * u * raw1 + u * u * raw0};
}

double ProjectionCoeffs::polynomial(double v) const noexcept {
    const double theta = weight.theta();
    const double c = v - weight.u();
    return c0 + c1 * c / std::sqrt(theta) + c2 * (0.5 * c * c / theta - 0.5);
}

double ProjectionCoeffs::operator()(double v) const noexcept { return polynomial(v) * weight(v); }

ProjectionCoeffs project_from_moments(const SpeciesMoments& Mk, double mass_ratio,
                                      const CentralMoments& phi) {
    if (!(Mk.n > 0.0)) {
        throw ParameterError(fmt::format("projection undefined for n = {}", Mk.n));
    }
    ProjectionCoeffs out;
    out.weight = Maxwellian(Mk, mass_ratio);
    const double theta = out.weight.theta();
    out.c0 = phi.m0 / Mk.n;
    out.c1 = phi.m1 / (Mk.n * std::sqrt(theta));
    out.c2 = (phi.m2 / theta - phi.m0) / Mk.n;
    return out;
}

ProjectionCoeffs project_cross_maxwellian(const SpeciesMoments& Mk, const ExchangeQuantities& ex,
                                          Species species, double mass_ratio) {
    const double u_mix = species == Species::One ? ex.u12 : ex.u21;
    const double T_mix = species == Species::One ? ex.T12 : ex.T21;

    ProjectionCoeffs out;
    out.weight = Maxwellian(Mk, mass_ratio);
    const double theta = out.weight.theta();
    const double du = u_mix - Mk.u;
    out.c0 = 1.0;
    out.c1 = du / std::sqrt(theta);
    out.c2 = T_mix / Mk.T + du * du / theta - 1.0;
    return out;
}

StreamingMaxwellian::StreamingMaxwellian(const SpeciesMoments& Mk, double mass_ratio, double dn,
                                         double du, double dT)
    : M_(Mk, mass_ratio) {
    const double theta = M_.theta();
    const double dtheta = dT / mass_ratio;
    const double a = Mk.n > 0.0 ? dn / Mk.n : 0.0;
    const double b = du / theta;
    const double c = 0.5 * dtheta / theta;
    // d_x M = M [q0 + q1 (v-u) + q2 (v-u)^2]
    const double q0 = a - c;
    const double q1 = b;
    const double q2 = c / theta;
    // v = (v-u) + u
    poly_ = {Mk.u * q0, q0 + Mk.u * q1, q1 + Mk.u * q2, q2};
}

double StreamingMaxwellian::operator()(double v) const noexcept {
    const double c = v - M_.u();
    return M_(v) * (poly_[0] + c * (poly_[1] + c * (poly_[2] + c * poly_[3])));
}

CentralMoments StreamingMaxwellian::central_moments() const noexcept {
    double m[3] = {0.0, 0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 4; ++i) m[j] += poly_[i] * gaussian_central_moment(i + j, M_.n(), M_.theta());
    }
    return {m[0], m[1], m[2]};
}

}  // namespace kinmix
