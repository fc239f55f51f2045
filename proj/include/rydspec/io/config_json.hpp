#pragma once

#include <complex>
#include <string>

#include <json.hpp>

#include "rydspec/ladder.hpp"

namespace rydspec::io {

using nlohmann::json;

namespace detail {

inline double require_number(const json& j, const std::string& key, double fallback,
                             bool* present = nullptr) {
    if (!j.contains(key)) {
        if (present)
            *present = false;
        return fallback;
    }
    if (present)
        *present = true;
    const json& v = j.at(key);
    if (!v.is_number())
        throw DomainError("config." + key + ": must be a number");
    return v.get<double>();
}

inline HalfInt require_half_int(const json& v, const std::string& key) {
    try {
        if (v.is_string())
            return HalfInt::parse(v.get<std::string>());
        if (v.is_number_integer())
            return HalfInt(v.get<int>());
    } catch (const DomainError&) {
    }
    throw DomainError("config." + key + ": expected a half-integer like \"3/2\" or 1");
}

} // namespace detail

// Build a LadderConfig from JSON.  An optional "preset" key selects a named
// starting point; every other key overrides one field.  Frequencies and
// rates are given in Hz (converted to rad/s), angles in degrees.
inline LadderConfig parse_ladder_config(const json& j) {
    if (!j.is_object())
        throw DomainError("config: top level must be a JSON object");

    LadderConfig cfg;
    if (j.contains("preset")) {
        if (!j.at("preset").is_string())
            throw DomainError("config.preset: must be a string");
        const std::string name = j.at("preset").get<std::string>();
        const auto preset = preset_by_name(name);
        if (!preset)
            throw DomainError("config.preset: unknown preset '" + name + "'");
        cfg = *preset;
    }

    static const char* known[] = {
        "preset", "probe_rabi_hz", "coupling_rabi_hz", "mw_rabi_hz",
        "probe_detuning_hz", "mw_detuning_hz", "rydberg_lower", "rydberg_upper",
        "mw_theta_deg", "decay_e_hz", "decay_rs_hz", "decay_rp_hz",
        "extra_dephasing_hz", "probe_wavelength_m", "coupling_wavelength_m",
        "temperature_k", "atomic_mass_kg", "coupling_weights", "coupling_weights_mode",
    };
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || key == k;
        if (!ok)
            throw DomainError("config." + key + ": unknown key");
    }

    const auto hz = [&](const char* key, double& field) {
        bool present = false;
        const double v = detail::require_number(j, key, 0.0, &present);
        if (present)
            field = two_pi * v;
    };
    hz("probe_rabi_hz", cfg.probe_rabi);
    hz("coupling_rabi_hz", cfg.coupling_rabi);
    hz("mw_rabi_hz", cfg.mw_rabi);
    hz("probe_detuning_hz", cfg.probe_detuning);
    hz("mw_detuning_hz", cfg.mw_detuning);
    hz("decay_e_hz", cfg.decay_e);
    hz("decay_rs_hz", cfg.decay_rs);
    hz("decay_rp_hz", cfg.decay_rp);
    hz("extra_dephasing_hz", cfg.extra_dephasing);

    bool present = false;
    double v = detail::require_number(j, "mw_theta_deg", 0.0, &present);
    if (present)
        cfg.mw_theta = v * std::numbers::pi / 180.0;
    v = detail::require_number(j, "probe_wavelength_m", 0.0, &present);
    if (present)
        cfg.probe_wavelength = v;
    v = detail::require_number(j, "coupling_wavelength_m", 0.0, &present);
    if (present)
        cfg.coupling_wavelength = v;
    v = detail::require_number(j, "temperature_k", 0.0, &present);
    if (present)
        cfg.temperature = v;
    v = detail::require_number(j, "atomic_mass_kg", 0.0, &present);
    if (present)
        cfg.atomic_mass = v;

    if (j.contains("rydberg_lower"))
        cfg.rydberg_lower = detail::require_half_int(j.at("rydberg_lower"), "rydberg_lower");
    if (j.contains("rydberg_upper"))
        cfg.rydberg_upper = detail::require_half_int(j.at("rydberg_upper"), "rydberg_upper");

    if (j.contains("coupling_weights")) {
        const json& w = j.at("coupling_weights");
        if (!w.is_array() || w.empty())
            throw DomainError("config.coupling_weights: must be a non-empty array");
        cfg.coupling_weights.clear();
        for (const json& entry : w) {
            if (!entry.is_object() || !entry.contains("m"))
                throw DomainError("config.coupling_weights: entries need an \"m\" key");
            const HalfInt m = detail::require_half_int(entry.at("m"), "coupling_weights.m");
            const double re = detail::require_number(entry, "re", 1.0);
            const double im = detail::require_number(entry, "im", 0.0);
            for (const auto& [key, value] : entry.items())
                if (key != "m" && key != "re" && key != "im")
                    throw DomainError("config.coupling_weights." + key + ": unknown key");
            cfg.coupling_weights.emplace_back(m, std::complex<double>(re, im));
        }
    }

    if (j.contains("coupling_weights_mode")) {
        const json& m = j.at("coupling_weights_mode");
        if (m.is_string() && m.get<std::string>() == "coherent")
            cfg.weights_mode = WeightsMode::Coherent;
        else if (m.is_string() && m.get<std::string>() == "incoherent")
            cfg.weights_mode = WeightsMode::Incoherent;
        else
            throw DomainError("config.coupling_weights_mode: must be \"coherent\" or \"incoherent\"");
    }

    cfg.validate();
    return cfg;
}

inline LadderConfig parse_ladder_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_ladder_config(j);
}

// Serialize in the same Hz/degree units the parser accepts.
inline json ladder_config_to_json(const LadderConfig& cfg) {
    json j;
    j["probe_rabi_hz"] = cfg.probe_rabi / two_pi;
    j["coupling_rabi_hz"] = cfg.coupling_rabi / two_pi;
    j["mw_rabi_hz"] = cfg.mw_rabi / two_pi;
    j["probe_detuning_hz"] = cfg.probe_detuning / two_pi;
    j["mw_detuning_hz"] = cfg.mw_detuning / two_pi;
    j["rydberg_lower"] = cfg.rydberg_lower.str();
    j["rydberg_upper"] = cfg.rydberg_upper.str();
    j["mw_theta_deg"] = cfg.mw_theta * 180.0 / std::numbers::pi;
    j["decay_e_hz"] = cfg.decay_e / two_pi;
    j["decay_rs_hz"] = cfg.decay_rs / two_pi;
    j["decay_rp_hz"] = cfg.decay_rp / two_pi;
    j["extra_dephasing_hz"] = cfg.extra_dephasing / two_pi;
    j["probe_wavelength_m"] = cfg.probe_wavelength;
    j["coupling_wavelength_m"] = cfg.coupling_wavelength;
    j["temperature_k"] = cfg.temperature;
    j["atomic_mass_kg"] = cfg.atomic_mass;
    j["coupling_weights"] = json::array();
    for (const auto& [m, w] : cfg.coupling_weights)
        j["coupling_weights"].push_back({{"m", m.str()}, {"re", w.real()}, {"im", w.imag()}});
    j["coupling_weights_mode"] =
        cfg.weights_mode == WeightsMode::Coherent ? "coherent" : "incoherent";
    return j;
}

} // namespace rydspec::io
