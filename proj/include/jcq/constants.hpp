#pragma once

// Physical constants (CODATA-2018 exact definitions) expressed in the
// internal unit system of this library:
//
//   energy        micro-electronvolt (ueV)
//   bath mode     carried as energy E = h*nu (ueV), not angular frequency
//   time          dimensionless t with phase = E*t; lab time tau = t*hbar
//   temperature   kelvin, entering only through k_B*T (ueV)
//
// With these choices exp(i t E_J) and coth(E/(2 k_B T)) are dimensionless
// with no stray hbar factors, and t = 0.02 corresponds to tau ~ 13 ps.

namespace jcq::constants {

// reduced Planck constant, ueV*s (hbar = h/2pi, h exact by SI definition)
inline constexpr double hbar_ueV_s = 6.5821195695090657e-10;

// Planck constant, ueV*s: E = h*nu for ordinary frequency nu in Hz
inline constexpr double h_ueV_s = 4.1356676969238586e-9;

// Boltzmann constant, ueV/K
inline constexpr double k_B_ueV_per_K = 86.173332621451774;

// elementary charge, C (exact)
inline constexpr double e_C = 1.602176634e-19;

// Planck constant, J*s (exact) -- kept for SI-side conversions
inline constexpr double h_J_s = 6.62607015e-34;

// superconducting resistance quantum h/(2e)^2, ohm
inline constexpr double R_Q_ohm = h_J_s / ((2.0 * e_C) * (2.0 * e_C));

// dimensionless t -> picoseconds: tau[ps] = t * hbar[ueV*s] * 1e12
inline constexpr double t_to_ps = hbar_ueV_s * 1e12;

// 1 ueV in J, for capacitance/current conversions
inline constexpr double ueV_J = e_C * 1e-6;

}  // namespace jcq::constants
