#pragma once

// Unit conversions between lab quantities (Hz, K, F, A, ohm, ps) and the
// internal ueV / dimensionless-t system.  See constants.hpp for the
// conventions.  All functions are pure and validate their preconditions
// with DomainError.

namespace jcq::units {

// E = h*nu for an ordinary (non-angular) frequency in Hz -> ueV
double freq_to_energy(double nu_Hz);

// E = hbar*omega for an angular frequency in rad/s -> ueV; used when band
// edges are interpreted as angular frequencies (band-interpretation switch)
double angular_freq_to_energy(double omega_rad_s);

// dimensionless t <-> physical time in ps (tau = t*hbar)
double t_to_tau_ps(double t);
double tau_ps_to_t(double tau_ps);

// k_B*T in ueV
double thermal_energy(double T_K);

// charging energy E_c = e^2/(2(C_g + C_J)) -> ueV
double charging_energy(double C_g_F, double C_J_F);

// Josephson coupling E_J = I_c*hbar/(2e) -> ueV, and its inverse
double josephson_energy(double I_c_A);
double critical_current(double E_J_ueV);

// Ohmic coupling strength eta = 4 (R/R_Q) (C_t/C_J)^2
double eta_from_circuit(double R_ohm, double ct_over_cj);

// 1/f coupling scale from the charging energy:
//   kappa_ueV2 = 32 E_c^2/pi   (internal, ueV^2; phase enters as E*t)
//   kappa_SI   = kappa_ueV2/hbar^2   (s^-2, the conventional quote)
struct Kappa {
  double kappa_ueV2;
  double kappa_SI_per_s2;
};
Kappa kappa_from_charging(double E_c_ueV);

}  // namespace jcq::units
