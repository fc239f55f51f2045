#pragma once

#include <cmath>

#include "rydspec/constants.hpp"
#include "rydspec/errors.hpp"
#include "rydspec/ladder.hpp"
#include "rydspec/peak_fit.hpp"

namespace rydspec {

struct FieldEstimate {
    double rabi = 0.0;                // microwave Rabi frequency, rad/s
    double field_amplitude = 0.0;     // V/m
    double dipole_moment = 0.0;       // C m
    double frequency_splitting = 0.0; // Hz, the measured Autler-Townes splitting
};

// Invert the Autler-Townes splitting into a field amplitude: the doublet
// separation in ordinary frequency equals Omega_mw/2pi, and Omega_mw =
// mu E / hbar, so E = hbar * 2pi * splitting / mu.
inline FieldEstimate splitting_to_field(double splitting_hz, double dipole_moment_si) {
    if (!(dipole_moment_si > 0.0) || !std::isfinite(dipole_moment_si))
        throw DomainError("splitting_to_field: dipole moment must be finite and > 0");
    if (!(splitting_hz >= 0.0) || !std::isfinite(splitting_hz))
        throw DomainError("splitting_to_field: splitting must be finite and >= 0");
    FieldEstimate est;
    est.frequency_splitting = splitting_hz;
    est.rabi = two_pi * splitting_hz;
    est.dipole_moment = dipole_moment_si;
    est.field_amplitude = constants::hbar * est.rabi / dipole_moment_si;
    return est;
}

// Round trip: the splitting a given field estimate predicts.
inline double field_to_splitting(const FieldEstimate& est) {
    if (!(est.dipole_moment > 0.0))
        throw DomainError("field_to_splitting: dipole moment must be > 0");
    if (!(est.field_amplitude >= 0.0) || !std::isfinite(est.field_amplitude))
        throw DomainError("field_to_splitting: field amplitude must be finite and >= 0");
    return est.field_amplitude * est.dipole_moment / constants::hbar / two_pi;
}

struct TransitionComparison {
    double field_ratio = 0.0; // E_b / E_a implied by the two splittings
    double power_ratio = 0.0; // field_ratio squared
};

// Two fitted doublets taken on different microwave transitions measure the
// same field only if their splittings scale with the dipole moments; the
// returned ratios quantify the residual mismatch (1 means perfect agreement).
inline TransitionComparison compare_transitions(const PeakFit& fit_a, const PeakFit& fit_b,
                                                double dipole_a_si, double dipole_b_si) {
    if (!(dipole_a_si > 0.0) || !(dipole_b_si > 0.0))
        throw DomainError("compare_transitions: dipole moments must be > 0");
    if (!(fit_a.splitting > 0.0) || !(fit_b.splitting > 0.0))
        throw DomainError("compare_transitions: splittings must be > 0");
    TransitionComparison cmp;
    // E = hbar * 2pi * splitting / mu, so E_b/E_a = (df_b/df_a)(mu_a/mu_b).
    cmp.field_ratio = (fit_b.splitting / fit_a.splitting) * (dipole_a_si / dipole_b_si);
    cmp.power_ratio = cmp.field_ratio * cmp.field_ratio;
    return cmp;
}

} // namespace rydspec
