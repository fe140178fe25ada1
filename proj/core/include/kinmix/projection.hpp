#pragma once

// Orthogonal projection onto span{M, v M, |v|^2 M} in the M^{-1}-weighted L2
// space. A projection is stored as three coefficients in the orthonormal-type
// basis
//
//     psi0 = 1,  psi1 = (v-u)/sqrt(theta),  psi2 = (v-u)^2/(2 theta) - 1/2,
//
// with theta = T/mr, so that Pi(phi)(v) = [c0 psi0 + c1 psi1 + c2 psi2] M(v)
// and Pi(M) has coefficients (1, 0, 0). Evaluation is lazy: nothing is ever
// sampled on a velocity grid.

#include <array>

#include "kinmix/model.hpp"

namespace kinmix {

/// Centred velocity moments of a function phi about the Maxwellian mean u:
/// (<phi>, <(v-u) phi>, <(v-u)^2 phi>).
struct CentralMoments {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

/// Converts raw moments (<phi>, <v phi>, <v^2 phi>) to moments centred at u.
CentralMoments center_moments(double raw0, double raw1, double raw2, double u) noexcept;

struct ProjectionCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    Maxwellian weight;

    /// Pi(phi)(v).
    double operator()(double v) const noexcept;
    /// Polynomial part [c0 + c1 psi1 + c2 psi2] at v, without the Maxwellian factor.
    double polynomial(double v) const noexcept;
};

/// Throws ParameterError when n <= 0 or T <= 0.
ProjectionCoeffs project_from_moments(const SpeciesMoments& Mk, double mass_ratio,
                                      const CentralMoments& phi);

/// Closed form of Pi_{M1}(M12) (species One) or Pi_{M2}(M21) (species Two).
ProjectionCoeffs project_cross_maxwellian(const SpeciesMoments& Mk, const ExchangeQuantities& ex,
                                          Species species, double mass_ratio);

/// phi(v) - Pi(phi)(v).
inline double complement_eval(double phi_at_v, const ProjectionCoeffs& coeffs, double v) noexcept {
    return phi_at_v - coeffs(v);
}

/// v d_x M for a Maxwellian whose (n, u, T) have spatial gradients (dn, du, dT).
/// Written as M(v) * P(v-u) with P a cubic polynomial in the centred velocity.
class StreamingMaxwellian {
public:
    StreamingMaxwellian(const SpeciesMoments& Mk, double mass_ratio, double dn, double du, double dT);

    double operator()(double v) const noexcept;
    /// Coefficients of P in powers of (v-u).
    const std::array<double, 4>& polynomial() const noexcept { return poly_; }
    /// Exact Gaussian central moments of v d_x M.
    CentralMoments central_moments() const noexcept;
    const Maxwellian& maxwellian() const noexcept { return M_; }

private:
    Maxwellian M_;
    std::array<double, 4> poly_{};
};

}  // namespace kinmix
