#pragma once

#include <complex>

// Closed-form short-time evolution of the qubit density matrix under pure
// dephasing, with the dephasing exponent B^2(t) supplied by the caller
// (bath_kernel computes it; this module is exact given B^2):
//
//   rho11(t) = 1/2 rho00 (1 - e^{-B^2}) + 1/2 rho11 (1 + e^{-B^2})
//   rho10(t) = 1/2 rho10 (1 - e^{-B^2} + e^{i t E_J} (1 + e^{-B^2}))
//
// plus the ideal (closed) evolution, the deviation operator
// sigma = rho(t) - rho_ideal(t), its lambda-norm, and the worst-case
// decoherence measure D = sup over initial states of the norm,
// D = (1 - e^{-B^2})/2 (the Bloch bound (rho00-rho11)^2 + 4|rho10|^2 <= 1
// is saturated by diagonal pure states, and sin^2(E_J t/2) <= 1).

namespace jcq::dynamics {

// density matrix in the energy basis; rho01 is implied as conj(rho10)
struct QubitState {
  double rho00;
  double rho11;
  std::complex<double> rho10;
};

// throws DomainError unless trace = 1 and |rho10|^2 <= rho00*rho11, both
// within 1e-12, with populations in [0, 1]
void validate(const QubitState& rho);

// rho = (I + x sx + y sy + z sz)/2; requires x^2+y^2+z^2 <= 1 (+1e-12)
QubitState from_bloch(double x, double y, double z);

// traceless deviation; sigma00 = -sigma11 implied
struct Deviation {
  double sigma11;
  std::complex<double> sigma10;
};

struct DynamicsParams {
  double E_J_ueV;     // > 0
  double b_squared;   // >= 0, from bath_kernel at the same t
};

// optional evolve diagnostics: the o(tau^3) split-operator form degrades
// past the characteristic time 1/E_J, which is a warning, not an error
// (the regime of interest extends to t ~ 0.1)
struct EvolveInfo {
  bool beyond_validity = false;
  double validity_limit_t = 0.0;
};

double validity_limit(double E_J_ueV);  // 1/E_J

QubitState evolve(const QubitState& rho0, double t, const DynamicsParams& p,
                  EvolveInfo* info = nullptr);

QubitState ideal_evolve(const QubitState& rho0, double t, double E_J_ueV);

Deviation deviation(const QubitState& rho0, double t,
                    const DynamicsParams& p);

// ||sigma|| = sqrt(|sigma10|^2 + sigma11^2)
double norm_lambda(const Deviation& sigma);

// direct closed form:
// (1-e^{-B^2})/2 * sqrt((rho00-rho11)^2 + 4 |rho10|^2 sin^2(E_J t/2))
double norm_closed_form(const QubitState& rho0, double t,
                        const DynamicsParams& p);

// sup of the norm over initial states: (1 - e^{-B^2})/2, in [0, 1/2)
double decoherence_D(const DynamicsParams& p);

}  // namespace jcq::dynamics
