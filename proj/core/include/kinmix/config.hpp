#pragma once

// JSON run configuration.
//
//     {
//       "mode": "homogeneous" | "general" | "reference",
//       "domain":    {"Lx": ..., "Lv": ..., "Nx": ..., "Nv": ...},
//       "particles": {"Np1": ..., "Np2": ..., "seed": ...},
//       "time":      {"dt": ..., "t_end": ..., "output_every": ...},
//       "mixture":   {"m1": ..., "m2": ..., "delta": ..., "alpha": ..., "gamma": ..., "nu12": ...},
//       "knudsen":   {"eps1": ..., "epst1": ..., "eps2": ..., "epst2": ...},
//       "init":      {"preset": "...", "beta": ...}
//     }
//
// Unknown keys are rejected. nu12, output_every and beta may be omitted.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "kinmix/grid.hpp"
#include "kinmix/model.hpp"

namespace kinmix {

enum class RunMode { Homogeneous, General, Reference };

std::string_view to_string(RunMode mode) noexcept;

struct RunConfig {
    RunMode mode = RunMode::General;
    GridSpec domain;
    std::size_t np1 = 500000;
    std::size_t np2 = 500000;
    std::uint64_t seed = 1;
    double dt = 1e-2;
    double t_end = 1.0;
    /// Snapshot cadence in steps; 0 writes only the initial and final snapshots.
    std::size_t output_every = 0;
    MixtureParams mixture;
    std::string preset = "cosine-perturbed";
    double beta = 0.1;

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
std::string to_json(const RunConfig& config);

/// Experiment defaults for a preset: the reference domain and mixture
/// parameters, with masses and run mode matching the preset.
RunConfig preset_config(std::string_view preset);

}  // namespace kinmix
