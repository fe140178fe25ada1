#pragma once

// Dimensionless two-species BGK model: mixture parameters, Maxwellians and
// the mixture-Maxwellian exchange quantities. Species 1 carries the reference
// mass, so its mass ratio is 1 and species 2 uses m2/m1 throughout.

#include <cmath>
#include <numbers>

namespace kinmix {

enum class Species { One = 1, Two = 2 };

struct MixtureParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double delta = 0.5;
    double alpha = 0.5;
    double gamma = 0.1;
    double nu12 = 1.0;
    // Knudsen numbers: intra-species (eps1, eps2) and interspecies (epst1, epst2).
    double eps1 = 1.0;
    double epst1 = 1.0;
    double eps2 = 1.0;
    double epst2 = 1.0;

    /// Interspecies frequency ratio nu12/nu21, fixed by the Knudsen numbers.
    double eps() const noexcept { return epst2 / epst1; }
    double beta1() const noexcept { return epst1 / eps1; }
    double beta2() const noexcept { return epst2 / eps2; }
    double mass_ratio() const noexcept { return m2 / m1; }
    double mass_ratio(Species s) const noexcept { return s == Species::One ? 1.0 : m2 / m1; }

    bool operator==(const MixtureParams&) const = default;
};

/// Lower admissible bound on delta for the given parameters (uses the derived eps).
double delta_lower_bound(const MixtureParams& p) noexcept;
/// Upper admissible bound on gamma; collapses to 0 at delta = 1.
double gamma_upper_bound(const MixtureParams& p) noexcept;

/// MixtureParams that passed validate_params(). Only obtainable through it.
class ValidatedParams {
public:
    const MixtureParams& get() const noexcept { return p_; }
    const MixtureParams* operator->() const noexcept { return &p_; }

private:
    explicit ValidatedParams(const MixtureParams& p) : p_(p) {}
    friend ValidatedParams validate_params(const MixtureParams& p);
    MixtureParams p_;
};

/// Checks positivity, 0 < eps <= 1, 0 <= alpha <= 1 and the delta/gamma
/// bounds that keep every mixture temperature positive. Throws ParameterError
/// naming the violated bound.
ValidatedParams validate_params(const MixtureParams& p);

struct SpeciesMoments {
    double n = 1.0;
    double u = 0.0;
    double T = 1.0;
};

struct ExchangeQuantities {
    double u12 = 0.0;
    double T12 = 1.0;
    double u21 = 0.0;
    double T21 = 1.0;
};

ExchangeQuantities exchange_quantities(const SpeciesMoments& s1, const SpeciesMoments& s2,
                                       const ValidatedParams& p) noexcept;

/// Conserved moment vector (<f>, <v f>, <v^2 f>).
struct MomentVector {
    double n = 0.0;
    double nu = 0.0;
    double E = 0.0;

    MomentVector& operator+=(const MomentVector& o) noexcept {
        n += o.n;
        nu += o.nu;
        E += o.E;
        return *this;
    }
    MomentVector& operator-=(const MomentVector& o) noexcept {
        n -= o.n;
        nu -= o.nu;
        E -= o.E;
        return *this;
    }
    MomentVector& operator*=(double s) noexcept {
        n *= s;
        nu *= s;
        E *= s;
        return *this;
    }
    friend MomentVector operator+(MomentVector a, const MomentVector& b) noexcept { return a += b; }
    friend MomentVector operator-(MomentVector a, const MomentVector& b) noexcept { return a -= b; }
    friend MomentVector operator*(double s, MomentVector a) noexcept { return a *= s; }
    friend MomentVector operator*(MomentVector a, double s) noexcept { return a *= s; }
};

/// (n, n u, n (T/mr + u^2)).
MomentVector equilibrium_moment_vector(const SpeciesMoments& m, double mass_ratio) noexcept;
/// <v^3 M> = n u (u^2 + 3 T/mr).
double third_flux_moment(const SpeciesMoments& m, double mass_ratio) noexcept;
/// Inverse of equilibrium_moment_vector. Does not check positivity.
SpeciesMoments primitive_moments(const MomentVector& U, double mass_ratio) noexcept;

/// n sqrt(mr/(2 pi T)) exp(-mr (v-u)^2 / (2T)). Throws ParameterError for T <= 0.
double maxwellian(const SpeciesMoments& m, double mass_ratio, double v);

/// Maxwellian with its normalisation precomputed, for evaluation at many velocities.
class Maxwellian {
public:
    Maxwellian() = default;
    /// Throws ParameterError for T <= 0.
    Maxwellian(const SpeciesMoments& m, double mass_ratio);

    double operator()(double v) const noexcept {
        const double c = v - u_;
        return peak_ * std::exp(-c * c * half_inv_theta_);
    }
    double n() const noexcept { return n_; }
    double u() const noexcept { return u_; }
    /// Velocity variance T/mr.
    double theta() const noexcept { return theta_; }

private:
    double n_ = 0.0;
    double u_ = 0.0;
    double theta_ = 1.0;
    double peak_ = 0.0;
    double half_inv_theta_ = 0.5;
};

/// Mixture Maxwellian M12 (species 1 frame, density n1) or M21 (species 2
/// frame, density n2) built from the exchange quantities.
SpeciesMoments mixture_moments(Species k, const SpeciesMoments& s1, const SpeciesMoments& s2,
                               const ExchangeQuantities& ex) noexcept;

/// Interspecies relaxation frequency nu12 n_j / epst_k for species k.
double cross_frequency(Species k, const SpeciesMoments& s1, const SpeciesMoments& s2,
                       const ValidatedParams& p) noexcept;
/// Intra-species relaxation frequency nu12 n_k / eps_k.
double self_frequency(Species k, const SpeciesMoments& s1, const SpeciesMoments& s2,
                      const ValidatedParams& p) noexcept;

/// Central Gaussian moment <(v-u)^k M> for a Maxwellian of density n and variance theta.
double gaussian_central_moment(int k, double n, double theta) noexcept;

}  // namespace kinmix
