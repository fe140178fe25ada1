#include "kinmix/presets.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "kinmix/errors.hpp"

namespace kinmix {

namespace {

constexpr SpeciesMoments kLightHot{1.0, 0.5, 1.0};
constexpr SpeciesMoments kHeavyCold{1.2, 0.1, 0.1};

struct Profile {
    PhaseSpaceFunction f;
    std::function<MomentVector(double, double)> average;
};

Profile uniform_maxwellian(const SpeciesMoments& m, double mass_ratio) {
    const Maxwellian M(m, mass_ratio);
    const MomentVector U = equilibrium_moment_vector(m, mass_ratio);
    return {[M](double, double v) { return M(v); }, [U](double, double) { return U; }};
}

Profile uniform_quartic() {
    return {[](double, double v) { return quartic_profile(v); },
            [](double, double) { return MomentVector{1.0, 0.0, 5.0}; }};
}

// (1 + beta cos(x/2)) times the quartic profile.
Profile perturbed_quartic(double beta) {
    return {[beta](double x, double v) { return (1.0 + beta * std::cos(0.5 * x)) * quartic_profile(v); },
            [beta](double a, double b) {
                const double mean_cos = 2.0 * (std::sin(0.5 * b) - std::sin(0.5 * a)) / (b - a);
                const double n = 1.0 + beta * mean_cos;
                return MomentVector{n, 0.0, 5.0 * n};
            }};
}

InitialCondition assemble(const PresetInfo& info, Profile p1, Profile p2) {
    return {info, std::move(p1.f), std::move(p2.f), std::move(p1.average), std::move(p2.average)};
}

}  // namespace

double quartic_profile(double v) noexcept {
    const double v2 = v * v;
    return v2 * v2 * std::exp(-0.5 * v2) / (3.0 * std::sqrt(2.0 * std::numbers::pi));
}

const std::vector<PresetInfo>& list_presets() {
    static const std::vector<PresetInfo> presets{
        {"maxwellian-maxwellian",
         "homogeneous; Maxwellians (n,u,T) = (1, 0.5, 1) and (1.2, 0.1, 0.1), m2 = 1.5", false},
        {"maxwellian-maxwellian-t1-0.08", "as maxwellian-maxwellian with T1 = 0.08", false},
        {"maxwellian-maxwellian-t2-5", "as maxwellian-maxwellian with T2 = 5", false},
        {"v4-maxwellian", "homogeneous; f1 = v^4 exp(-v^2/2)/(3 sqrt(2 pi)), f2 Maxwellian (1.2, 0.1, 0.1)",
         false},
        {"v4-maxwellian-t2-5", "as v4-maxwellian with T2 = 5", false},
        {"cosine-perturbed",
         "f2 = (1 + beta cos(x/2)) v^4 exp(-v^2/2)/(3 sqrt(2 pi)), f1 Maxwellian (1, 0.5, 1), m1 = m2",
         true},
    };
    return presets;
}

const PresetInfo& find_preset(std::string_view name) {
    for (const PresetInfo& p : list_presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError(fmt::format("unknown preset '{}' (run 'kinmix presets' for the list)", name));
}

InitialCondition make_initial_condition(std::string_view name, double beta, double mass_ratio) {
    const PresetInfo& info = find_preset(name);
    SpeciesMoments s1 = kLightHot;
    SpeciesMoments s2 = kHeavyCold;
    if (name == "maxwellian-maxwellian-t1-0.08") s1.T = 0.08;
    if (name == "maxwellian-maxwellian-t2-5" || name == "v4-maxwellian-t2-5") s2.T = 5.0;

    if (name == "cosine-perturbed") {
        return assemble(info, uniform_maxwellian({1.0, 0.5, 1.0}, 1.0), perturbed_quartic(beta));
    }
    if (name.starts_with("v4-")) {
        return assemble(info, uniform_quartic(), uniform_maxwellian(s2, mass_ratio));
    }
    return assemble(info, uniform_maxwellian(s1, 1.0), uniform_maxwellian(s2, mass_ratio));
}

}  // namespace kinmix
