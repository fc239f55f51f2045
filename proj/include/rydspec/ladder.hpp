#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rydspec/constants.hpp"
#include "rydspec/half_int.hpp"
#include "rydspec/errors.hpp"

namespace rydspec {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class WeightsMode {
    Coherent,   // coupling laser addresses a fixed superposition of Zeeman states
    Incoherent, // independent sub-ensembles, |w|^2-weighted sum of responses
};

// Four-rung ladder: ground |g> --probe--> excited |e> --coupling--> Rydberg
// nS manifold --microwave--> Rydberg nP manifold.  All rates and frequencies
// are angular (rad/s); wavelengths and mass are SI.
struct LadderConfig {
    double probe_rabi = 0.0;
    double coupling_rabi = 0.0;
    double mw_rabi = 0.0;

    double probe_detuning = 0.0;
    double coupling_detuning = 0.0; // the spectrum scan sweeps this
    double mw_detuning = 0.0;

    HalfInt rydberg_lower = HalfInt::from_twice(1); // J of the nS manifold
    HalfInt rydberg_upper = HalfInt::from_twice(1); // J' of the nP manifold
    double mw_theta = 0.0; // microwave linear-polarization tilt, radians

    double decay_e = 0.0;  // excited-state population decay (to ground)
    double decay_rs = 0.0; // nS Rydberg decay
    double decay_rp = 0.0; // nP Rydberg decay
    double extra_dephasing = 0.0; // optional pure dephasing on each excited level

    double probe_wavelength = 780.241e-9;
    double coupling_wavelength = 480.0e-9;
    double temperature = 300.0;          // K, for the Doppler average
    double atomic_mass = 1.44316060e-25; // kg

    // Which nS Zeeman states the coupling laser populates, as (m, amplitude);
    // normalized internally so that sum |w|^2 = 1.
    std::vector<std::pair<HalfInt, std::complex<double>>> coupling_weights = {
        {HalfInt::from_twice(1), {1.0, 0.0}}};
    WeightsMode weights_mode = WeightsMode::Coherent;

    void validate() const {
        const auto nonneg = [](double v, const char* name) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw DomainError(std::string("LadderConfig.") + name + " must be finite and >= 0");
        };
        nonneg(probe_rabi, "probe_rabi");
        nonneg(coupling_rabi, "coupling_rabi");
        nonneg(mw_rabi, "mw_rabi");
        nonneg(decay_e, "decay_e");
        nonneg(decay_rs, "decay_rs");
        nonneg(decay_rp, "decay_rp");
        nonneg(extra_dephasing, "extra_dephasing");
        if (decay_e <= 0.0)
            throw DomainError("LadderConfig.decay_e must be > 0 (the probe line needs a width)");
        for (double v : {probe_detuning, coupling_detuning, mw_detuning, mw_theta})
            if (!std::isfinite(v))
                throw DomainError("LadderConfig: detunings and mw_theta must be finite");
        if (!(probe_wavelength > 0.0) || !(coupling_wavelength > 0.0))
            throw DomainError("LadderConfig: wavelengths must be > 0");
        if (!(temperature >= 0.0) || !(atomic_mass > 0.0))
            throw DomainError("LadderConfig: temperature must be >= 0 and mass > 0");
        if (rydberg_lower.twice() < 0 || rydberg_upper.twice() < 0)
            throw DomainError("LadderConfig: Rydberg J must be >= 0");
        const int dj = rydberg_upper.twice() - rydberg_lower.twice();
        if (dj != -2 && dj != 0 && dj != 2)
            throw DomainError("LadderConfig: |J'-J| of the microwave transition must be 0 or 1");
        if (coupling_weights.empty())
            throw DomainError("LadderConfig.coupling_weights must not be empty");
        double norm = 0.0;
        for (const auto& [m, w] : coupling_weights) {
            if (!HalfInt::same_character(rydberg_lower, m) || m.abs() > rydberg_lower)
                throw DomainError("LadderConfig.coupling_weights: m=" + m.str() +
                                  " is not a Zeeman state of J=" + rydberg_lower.str());
            norm += std::norm(w);
        }
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw DomainError("LadderConfig.coupling_weights must have positive total weight");
        for (std::size_t i = 0; i < coupling_weights.size(); ++i)
            for (std::size_t k = i + 1; k < coupling_weights.size(); ++k)
                if (coupling_weights[i].first == coupling_weights[k].first)
                    throw DomainError("LadderConfig.coupling_weights: duplicate m=" +
                                      coupling_weights[i].first.str());
    }

    // Normalized weight vector over the full nS Zeeman ladder, m ascending.
    std::vector<std::complex<double>> normalized_weights() const {
        const int n = rydberg_lower.twice() + 1;
        std::vector<std::complex<double>> w(static_cast<std::size_t>(n), {0.0, 0.0});
        double norm = 0.0;
        for (const auto& [m, amp] : coupling_weights)
            norm += std::norm(amp);
        const double scale = 1.0 / std::sqrt(norm);
        for (const auto& [m, amp] : coupling_weights) {
            const int idx = (m.twice() + rydberg_lower.twice()) / 2;
            w[static_cast<std::size_t>(idx)] = amp * scale;
        }
        return w;
    }
};

// 87Rb, 36S_1/2 <-> 36P_1/2 microwave transition near 86.36 GHz.
inline LadderConfig rb87_36s_36p12() {
    LadderConfig c;
    c.probe_rabi = two_pi * 6.0e6;
    c.coupling_rabi = two_pi * 0.67e6;
    c.mw_rabi = two_pi * 49.0e6;
    c.rydberg_lower = HalfInt::from_twice(1);
    c.rydberg_upper = HalfInt::from_twice(1);
    c.decay_e = two_pi * 6.07e6;
    c.decay_rs = two_pi * 10.0e3;
    c.decay_rp = two_pi * 10.0e3;
    return c;
}

// 87Rb, 36S_1/2 <-> 36P_3/2 microwave transition near 88.70 GHz.
inline LadderConfig rb87_36s_36p32() {
    LadderConfig c = rb87_36s_36p12();
    c.mw_rabi = two_pi * 70.0e6;
    c.rydberg_upper = HalfInt::from_twice(3);
    return c;
}

inline std::optional<LadderConfig> preset_by_name(const std::string& name) {
    if (name == "rb87-36s-36p12")
        return rb87_36s_36p12();
    if (name == "rb87-36s-36p32")
        return rb87_36s_36p32();
    return std::nullopt;
}

inline std::vector<std::string> preset_names() {
    return {"rb87-36s-36p12", "rb87-36s-36p32"};
}

} // namespace rydspec
