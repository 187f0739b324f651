#include <cmath>
#include <cstddef>

#include "jcq/simd/batch.hpp"

// ====================== Scalar reference kernels ======================
//
// Portable element-at-a-time implementation of the integrand tables.  The
// AVX2 backend must reproduce these values to ~1e-13 relative; keep any
// change here mirrored there (same branch thresholds, same operation
// order for the arguments of the transcendentals).

namespace jcq::simd {

namespace {

inline double coth_elem(double x) {
  // two-term Laurent branch below the shared threshold, else 1/tanh
  if (x < kCothSeriesCut) {
    return 1.0 / x + x / 3.0;
  }
  return 1.0 / std::tanh(x);
}

// x - sin(x): cancellation-free odd Taylor series below the shared
// threshold, plain subtraction above it
inline double xmsin_elem(double x) {
  if (x < kXmSinSeriesCut) {
    const double z = x * x;
    double p = detail::kXmSinCoef[6];
    for (int k = 5; k >= 0; --k) {
      p = p * z + detail::kXmSinCoef[k];
    }
    return x * z * p;
  }
  return x - std::sin(x);
}

void b2_ohmic_scalar(const double* e, double* out, std::size_t n, double t,
                     double two_kT, const OhmicTerm& p) {
  const double ht = 0.5 * t;
  const double si = p.sign * p.inv_E_cut;
  for (std::size_t i = 0; i < n; ++i) {
    const double E = e[i];
    const double w = p.eta * E * std::exp(si * E);
    const double s = std::sin(ht * E);
    const double c = coth_elem(E / two_kT);
    out[i] = w * s * s * c / (E * E);
  }
}

void b2_oneoverf_scalar(const double* e, double* out, std::size_t n, double t,
                        double two_kT, const OneOverFTerm& p) {
  const double ht = 0.5 * t;
  for (std::size_t i = 0; i < n; ++i) {
    const double E = e[i];
    // the weight's 1/coth and the kernel's coth are the same computed
    // value c, so the product is temperature independent by construction
    const double c = coth_elem(E / two_kT);
    const double w = p.kappa_alpha / (E * c);
    const double s = std::sin(ht * E);
    out[i] = w * c * s * s / (E * E);
  }
}

void cp_ohmic_scalar(const double* e, double* out, std::size_t n, double t,
                     const OhmicTerm& p) {
  const double si = p.sign * p.inv_E_cut;
  for (std::size_t i = 0; i < n; ++i) {
    const double E = e[i];
    const double w = p.eta * E * std::exp(si * E);
    out[i] = w * xmsin_elem(t * E) / (E * E);
  }
}

void cp_oneoverf_scalar(const double* e, double* out, std::size_t n, double t,
                        double two_kT, const OneOverFTerm& p) {
  for (std::size_t i = 0; i < n; ++i) {
    const double E = e[i];
    const double c = coth_elem(E / two_kT);
    const double w = p.kappa_alpha / (E * c);
    out[i] = w * xmsin_elem(t * E) / (E * E);
  }
}

void v_exp_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void v_sin_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(x[i]);
}

void v_coth_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = coth_elem(x[i]);
}

void v_xmsin_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = xmsin_elem(x[i]);
}

const KernelTable kScalarTable = {
    "scalar",
    b2_ohmic_scalar,
    b2_oneoverf_scalar,
    cp_ohmic_scalar,
    cp_oneoverf_scalar,
    v_exp_scalar,
    v_sin_scalar,
    v_coth_scalar,
    v_xmsin_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace jcq::simd
