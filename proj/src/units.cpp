#include "jcq/units.hpp"

#include <cmath>
#include <string>

#include "jcq/constants.hpp"
#include "jcq/errors.hpp"

namespace jcq::units {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

void require_positive(double x, const char* name) {
  require_finite(x, name);
  if (x <= 0.0) {
    throw DomainError(std::string(name) + " must be > 0, got " +
                      std::to_string(x));
  }
}

void require_nonneg(double x, const char* name) {
  require_finite(x, name);
  if (x < 0.0) {
    throw DomainError(std::string(name) + " must be >= 0, got " +
                      std::to_string(x));
  }
}

}  // namespace

double freq_to_energy(double nu_Hz) {
  require_positive(nu_Hz, "frequency [Hz]");
  return constants::h_ueV_s * nu_Hz;
}

double angular_freq_to_energy(double omega_rad_s) {
  require_positive(omega_rad_s, "angular frequency [rad/s]");
  return constants::hbar_ueV_s * omega_rad_s;
}

double t_to_tau_ps(double t) {
  require_nonneg(t, "t");
  return t * constants::t_to_ps;
}

double tau_ps_to_t(double tau_ps) {
  require_nonneg(tau_ps, "tau [ps]");
  return tau_ps / constants::t_to_ps;
}

double thermal_energy(double T_K) {
  require_positive(T_K, "temperature [K]");
  return constants::k_B_ueV_per_K * T_K;
}

double charging_energy(double C_g_F, double C_J_F) {
  require_positive(C_g_F, "C_g [F]");
  require_positive(C_J_F, "C_J [F]");
  // e^2/(2(C_g+C_J)) in J, then J -> ueV
  const double e = constants::e_C;
  return e * e / (2.0 * (C_g_F + C_J_F)) / constants::ueV_J;
}

double josephson_energy(double I_c_A) {
  require_positive(I_c_A, "I_c [A]");
  // I_c*hbar/(2e) in J, then J -> ueV; hbar[J*s] = hbar[ueV*s]*ueV_J
  return I_c_A * constants::hbar_ueV_s / (2.0 * constants::e_C);
}

double critical_current(double E_J_ueV) {
  require_positive(E_J_ueV, "E_J [ueV]");
  return E_J_ueV * 2.0 * constants::e_C / constants::hbar_ueV_s;
}

double eta_from_circuit(double R_ohm, double ct_over_cj) {
  require_positive(R_ohm, "R [ohm]");
  require_positive(ct_over_cj, "C_t/C_J");
  return 4.0 * (R_ohm / constants::R_Q_ohm) * ct_over_cj * ct_over_cj;
}

Kappa kappa_from_charging(double E_c_ueV) {
  require_positive(E_c_ueV, "E_c [ueV]");
  const double pi = 3.14159265358979323846;
  Kappa k;
  // 64 E_c^2/(h hbar) in SI collapses to 32 E_c^2/pi in ueV^2 (phase = E*t)
  k.kappa_ueV2 = 32.0 * E_c_ueV * E_c_ueV / pi;
  k.kappa_SI_per_s2 =
      k.kappa_ueV2 / (constants::hbar_ueV_s * constants::hbar_ueV_s);
  return k;
}

}  // namespace jcq::units
