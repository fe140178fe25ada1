#include "kinmix/config.hpp"

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "kinmix/errors.hpp"
#include "kinmix/presets.hpp"

namespace kinmix {

namespace {

using nlohmann::json;

const json& require_object(const json& parent, const char* key) {
    if (!parent.contains(key)) throw ConfigError(fmt::format("missing required block '{}'", key));
    const json& j = parent.at(key);
    if (!j.is_object()) throw ConfigError(fmt::format("'{}' must be an object", key));
    return j;
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || item.key() == a;
        if (!known) {
            throw ConfigError(where.empty() ? fmt::format("unknown key '{}'", item.key())
                                            : fmt::format("unknown key '{}.{}'", where, item.key()));
        }
    }
}

double get_number(const json& obj, const char* block, const char* key, const double* fallback = nullptr) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(fmt::format("missing required field '{}.{}'", block, key));
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(fmt::format("'{}.{}' must be a number", block, key));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(fmt::format("'{}.{}' must be finite", block, key));
    return x;
}

std::uint64_t get_count(const json& obj, const char* block, const char* key,
                        const std::uint64_t* fallback = nullptr) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(fmt::format("missing required field '{}.{}'", block, key));
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
        throw ConfigError(fmt::format("'{}.{}' must be a non-negative integer", block, key));
    }
    return v.get<std::uint64_t>();
}

void require_positive(double x, const char* field) {
    if (!(x > 0.0)) throw ConfigError(fmt::format("'{}' must be positive (got {})", field, x));
}

}  // namespace

std::string_view to_string(RunMode mode) noexcept {
    switch (mode) {
        case RunMode::Homogeneous: return "homogeneous";
        case RunMode::General: return "general";
        case RunMode::Reference: return "reference";
    }
    return "general";
}

RunConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("malformed JSON: {}", e.what()));
    }
    if (!root.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown(root, "", {"mode", "domain", "particles", "time", "mixture", "knudsen", "init"});

    RunConfig cfg;
    if (!root.contains("mode") || !root.at("mode").is_string()) {
        throw ConfigError("missing or non-string field 'mode'");
    }
    const std::string mode = root.at("mode").get<std::string>();
    if (mode == "homogeneous") {
        cfg.mode = RunMode::Homogeneous;
    } else if (mode == "general") {
        cfg.mode = RunMode::General;
    } else if (mode == "reference") {
        cfg.mode = RunMode::Reference;
    } else {
        throw ConfigError(fmt::format("'mode' must be homogeneous, general or reference (got '{}')", mode));
    }

    const json& domain = require_object(root, "domain");
    reject_unknown(domain, "domain", {"Lx", "Lv", "Nx", "Nv"});
    cfg.domain.lx = get_number(domain, "domain", "Lx");
    cfg.domain.lv = get_number(domain, "domain", "Lv");
    cfg.domain.nx = get_count(domain, "domain", "Nx");
    cfg.domain.nv = get_count(domain, "domain", "Nv");
    require_positive(cfg.domain.lx, "domain.Lx");
    require_positive(cfg.domain.lv, "domain.Lv");
    if (cfg.domain.nx < 1) throw ConfigError("'domain.Nx' must be at least 1");
    if (cfg.domain.nv < 3) throw ConfigError("'domain.Nv' must be at least 3");

    const json& particles = require_object(root, "particles");
    reject_unknown(particles, "particles", {"Np1", "Np2", "seed"});
    cfg.np1 = get_count(particles, "particles", "Np1");
    cfg.np2 = get_count(particles, "particles", "Np2");
    cfg.seed = get_count(particles, "particles", "seed");
    if (cfg.np1 < 1) throw ConfigError("'particles.Np1' must be at least 1");
    if (cfg.np2 < 1) throw ConfigError("'particles.Np2' must be at least 1");

    const json& time = require_object(root, "time");
    reject_unknown(time, "time", {"dt", "t_end", "output_every"});
    cfg.dt = get_number(time, "time", "dt");
    cfg.t_end = get_number(time, "time", "t_end");
    const std::uint64_t no_snapshots = 0;
    cfg.output_every = get_count(time, "time", "output_every", &no_snapshots);
    require_positive(cfg.dt, "time.dt");
    if (cfg.t_end < 0.0) throw ConfigError("'time.t_end' must be non-negative");

    const json& mixture = require_object(root, "mixture");
    reject_unknown(mixture, "mixture", {"m1", "m2", "delta", "alpha", "gamma", "nu12"});
    cfg.mixture.m1 = get_number(mixture, "mixture", "m1");
    cfg.mixture.m2 = get_number(mixture, "mixture", "m2");
    cfg.mixture.delta = get_number(mixture, "mixture", "delta");
    cfg.mixture.alpha = get_number(mixture, "mixture", "alpha");
    cfg.mixture.gamma = get_number(mixture, "mixture", "gamma");
    const double unit = 1.0;
    cfg.mixture.nu12 = get_number(mixture, "mixture", "nu12", &unit);

    const json& knudsen = require_object(root, "knudsen");
    reject_unknown(knudsen, "knudsen", {"eps1", "epst1", "eps2", "epst2"});
    cfg.mixture.eps1 = get_number(knudsen, "knudsen", "eps1");
    cfg.mixture.epst1 = get_number(knudsen, "knudsen", "epst1");
    cfg.mixture.eps2 = get_number(knudsen, "knudsen", "eps2");
    cfg.mixture.epst2 = get_number(knudsen, "knudsen", "epst2");

    try {
        validate_params(cfg.mixture);
    } catch (const ParameterError& e) {
        throw ConfigError(fmt::format("invalid mixture/knudsen parameters: {}", e.what()));
    }

    const json& init = require_object(root, "init");
    reject_unknown(init, "init", {"preset", "beta"});
    if (!init.contains("preset") || !init.at("preset").is_string()) {
        throw ConfigError("missing or non-string field 'init.preset'");
    }
    cfg.preset = init.at("preset").get<std::string>();
    const double no_perturbation = 0.0;
    cfg.beta = get_number(init, "init", "beta", &no_perturbation);
    const PresetInfo& info = [&]() -> const PresetInfo& {
        try {
            return find_preset(cfg.preset);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("init.preset: {}", e.what()));
        }
    }();
    if (info.spatial && cfg.mode == RunMode::Homogeneous) {
        throw ConfigError(fmt::format("init.preset: '{}' depends on x and cannot run in homogeneous mode", info.name));
    }
    if (std::abs(cfg.beta) >= 1.0) throw ConfigError("'init.beta' must satisfy |beta| < 1");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open configuration file '{}'", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_json(const RunConfig& c) {
    const json j = {
        {"mode", std::string(to_string(c.mode))},
        {"domain", {{"Lx", c.domain.lx}, {"Lv", c.domain.lv}, {"Nx", c.domain.nx}, {"Nv", c.domain.nv}}},
        {"particles", {{"Np1", c.np1}, {"Np2", c.np2}, {"seed", c.seed}}},
        {"time", {{"dt", c.dt}, {"t_end", c.t_end}, {"output_every", c.output_every}}},
        {"mixture",
         {{"m1", c.mixture.m1},
          {"m2", c.mixture.m2},
          {"delta", c.mixture.delta},
          {"alpha", c.mixture.alpha},
          {"gamma", c.mixture.gamma},
          {"nu12", c.mixture.nu12}}},
        {"knudsen",
         {{"eps1", c.mixture.eps1}, {"epst1", c.mixture.epst1}, {"eps2", c.mixture.eps2}, {"epst2", c.mixture.epst2}}},
        {"init", {{"preset", c.preset}, {"beta", c.beta}}},
    };
    return j.dump(2) + "\n";
}

RunConfig preset_config(std::string_view preset) {
    const PresetInfo& info = find_preset(preset);
    RunConfig c;
    c.preset = info.name;
    c.domain = GridSpec{4.0 * std::numbers::pi, 128, 20.0, 512};
    if (info.spatial) {
        c.mode = RunMode::General;
        c.mixture.m2 = 1.0;
        c.np1 = c.np2 = 500000;
        c.dt = 1e-2;
        c.t_end = 1.0;
        c.beta = 0.1;
    } else {
        c.mode = RunMode::Homogeneous;
        c.domain.nx = 1;
        c.mixture.m2 = 1.5;
        c.np1 = c.np2 = 10000;
        c.dt = 1e-4;
        c.t_end = 0.3;
        c.beta = 0.0;
        c.mixture.eps1 = c.mixture.epst1 = c.mixture.eps2 = c.mixture.epst2 = 0.05;
    }
    return c;
}

}  // namespace kinmix
