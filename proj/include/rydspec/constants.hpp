#pragma once

namespace rydspec::constants {

// CODATA 2018 values, SI.  hbar follows from the exact h = 6.62607015e-34 J s.
inline constexpr double hbar = 1.05457181765e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C (exact)
inline constexpr double bohr_radius = 5.29177210903e-11;   // m
inline constexpr double boltzmann = 1.380649e-23;          // J/K (exact)

// Atomic unit of electric dipole moment, e*a0.
inline constexpr double ea0 = elementary_charge * bohr_radius; // C m

} // namespace rydspec::constants
