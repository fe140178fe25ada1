#pragma once

// Initial conditions of the reference experiments.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kinmix/model.hpp"
#include "kinmix/particles.hpp"

namespace kinmix {

struct PresetInfo {
    std::string name;
    std::string description;
    /// True when the initial data depend on x.
    bool spatial = false;
};

const std::vector<PresetInfo>& list_presets();

/// Throws ConfigError for an unknown name.
const PresetInfo& find_preset(std::string_view name);

struct InitialCondition {
    PresetInfo info;
    PhaseSpaceFunction f1;
    PhaseSpaceFunction f2;
    /// Conserved moments (<f>, <v f>, <v^2 f>) averaged over x in [a, b].
    std::function<MomentVector(double a, double b)> average1;
    std::function<MomentVector(double a, double b)> average2;
};

/// `beta` is the amplitude of the density perturbation (ignored by
/// spatially uniform presets); `mass_ratio` is m2/m1.
InitialCondition make_initial_condition(std::string_view name, double beta, double mass_ratio);

/// v^4 exp(-v^2/2) / (3 sqrt(2 pi)): unit density, zero velocity, <v^2 f> = 5.
double quartic_profile(double v) noexcept;

}  // namespace kinmix
