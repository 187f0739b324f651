#pragma once

#include <cstdint>

#include "jcq/noise.hpp"

// Bath kernels obtained from the continuum limit of the discrete-mode sums:
//
//   B^2(t) = 8 int dE W(E) E^-2 sin^2(E t/2) coth(E/(2 k_B T))
//   C(t)   =   int dE W(E) E^-2 (E t - sin(E t))
//
// integrated over each noise member's hard band.  B^2 is the dephasing
// exponent consumed by qubit-dynamics; C is exposed as a diagnostic only
// (nothing downstream consumes it).
//
// Quadrature: substitution u = ln E (the 1/f band spans six decades and the
// integrand approaches a constant in u at low E), fixed 16-point
// Gauss-Legendre panels laid out per decade, panel widths additionally
// capped so no panel spans more than pi/4 of sin(E t/2) phase, then global
// dyadic refinement (every panel halved) until two successive totals agree
// to rel_tol.  Refinement order is sequential and deterministic, so equal
// requests produce bit-identical results on a given build.

namespace jcq::kernel {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  int max_refinements = 40;
  int panels_per_decade = 8;
};

struct KernelRequest {
  noise::NoiseModel model;
  double T_K = 0.03;
  double t = 0.0;
  QuadratureSpec quadrature{};
};

struct KernelResult {
  double b_squared;       // >= 0
  double c_phase;         // >= 0
  double est_rel_error;   // last refinement delta, <= rel_tol on success
  std::uint64_t evaluations;  // single-integrand evaluation count
};

// computes both kernels on shared panels; throws IntegrationError (carrying
// the best B^2 estimate and achieved error) on non-convergence
KernelResult compute_kernels(const KernelRequest& req);

// single-value conveniences over compute_kernels
double b_squared(const KernelRequest& req);
double c_phase(const KernelRequest& req);

// Independent verification oracle: the discrete-mode sum
//   B^2 = 8 sum_k |g_k|^2 E_k^-2 sin^2(E_k t/2) coth(E_k/(2 k_B T))
// with |g_k|^2 = W(E_k) dE_k on a midpoint log grid of n_modes points per
// member (dE_k = E_k du).  Deliberately shares no code with the adaptive
// path: plain scalar loop, inline weight formulas, libm transcendentals.
double b_squared_discrete(const noise::NoiseModel& model, double T_K,
                          double t, int n_modes);

}  // namespace jcq::kernel
