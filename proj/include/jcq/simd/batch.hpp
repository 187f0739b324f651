#pragma once

#include <cstddef>

// Batch evaluation of the quadrature integrands over arrays of mode
// energies.  The adaptive integrator spends essentially all of its time
// here, evaluating exp/sin/coth at every Gauss node, so these loops exist
// in two interchangeable implementations:
//
//   scalar  portable reference, one libm call per element
//   avx2    4-wide intrinsics with Cephes-style exp/sin/coth cores
//
// The active implementation is chosen at runtime (CPUID probe, overridable
// through select_backend) and both must agree elementwise to ~1e-13
// relative; the equivalence suite enforces this.  Branch thresholds
// (coth series switch, x - sin x series switch) are shared constants so the
// two backends take the same branch for the same element.
//
// Integrand tables (caller applies the overall factor 8 and the panel
// weights):
//   b2:  W(E) sin^2(E t/2) coth(E/(2 k_B T)) / E^2
//   cp:  W(E) (E t - sin(E t)) / E^2
// with W per noise kind; for 1/f the weight's 1/coth and the kernel's coth
// are the same computed value, so their product cancels exactly and the
// result is temperature independent by construction.

namespace jcq::simd {

// coth(x): two-term Laurent series 1/x + x/3 below this threshold
inline constexpr double kCothSeriesCut = 1e-6;
// x - sin(x): 7-term odd Taylor series below this threshold (direct
// subtraction loses ~6 eps/x^2 relative accuracy as x -> 0)
inline constexpr double kXmSinSeriesCut = 0.6;

namespace detail {
// x - sin(x) = x^3 sum_k kXmSinCoef[k] (x^2)^k, k = 0..6; truncation error
// < 2e-15 relative at the series cut.  Shared verbatim by both backends so
// they agree to rounding inside the series branch.
inline constexpr double kXmSinCoef[7] = {
    1.0 / 6.0,
    -1.0 / 120.0,
    1.0 / 5040.0,
    -1.0 / 362880.0,
    1.0 / 39916800.0,
    -1.0 / 6227020800.0,
    1.0 / 1307674368000.0,
};
}  // namespace detail

struct OhmicTerm {
  double eta;
  double inv_E_cut;   // 1/E_cut, ueV^-1
  double sign;        // -1 decaying cutoff (default), +1 growing
};

struct OneOverFTerm {
  double kappa_alpha;  // kappa_ueV2 * alpha_f
};

// function table for one backend; e[] holds mode energies in ueV, strictly
// positive; out[] receives the integrand values; two_kT = 2 k_B T in ueV
struct KernelTable {
  const char* name;

  void (*b2_ohmic)(const double* e, double* out, std::size_t n, double t,
                   double two_kT, const OhmicTerm& p);
  void (*b2_oneoverf)(const double* e, double* out, std::size_t n, double t,
                      double two_kT, const OneOverFTerm& p);
  void (*cp_ohmic)(const double* e, double* out, std::size_t n, double t,
                   const OhmicTerm& p);
  void (*cp_oneoverf)(const double* e, double* out, std::size_t n, double t,
                      double two_kT, const OneOverFTerm& p);

  // transcendental primitives, exposed for the equivalence suite
  void (*v_exp)(const double* x, double* out, std::size_t n);
  void (*v_sin)(const double* x, double* out, std::size_t n);
  void (*v_coth)(const double* x, double* out, std::size_t n);  // x > 0
  void (*v_xmsin)(const double* x, double* out, std::size_t n); // x - sin x, x >= 0
};

enum class Backend { auto_detect, scalar, avx2 };

// scalar reference table (always available)
const KernelTable& scalar_table();

// AVX2 table, or nullptr when not compiled in / not supported by this CPU
const KernelTable* avx2_table();

bool avx2_supported();

// select the backend used by active_table(); auto_detect picks the widest
// supported one; requesting avx2 on an unsupported host throws DomainError
void select_backend(Backend b);
Backend selected_backend();

const KernelTable& active_table();

}  // namespace jcq::simd
