#pragma once

#include <vector>

// Bath weight functions W(E) = D(omega) g^2(omega) in internal energy units
// for Ohmic and 1/f noise, plus the diagnostic spectral density
// J(E) = (pi/2) W(E) and power spectrum S(E) = J(E) coth(E/(2 k_B T)).
//
//   Ohmic:  W_O(E) = eta * E * exp(-E/E_cut)
//   1/f:    W_f(E) = kappa * alpha_f / (E * coth(E/(2 k_B T)))
//
// The printed form of the Ohmic cutoff has a growing exponential, which
// cannot act as a cutoff; the decaying sign is the default here and the
// positive sign is kept switchable for sensitivity studies.

namespace jcq::noise {

// soft-cutoff exponent sign for the Ohmic weight
enum class CutoffSign { negative, positive };

// hard integration band, internal energy units; 0 < E_lo < E_hi
struct Band {
  double E_lo_ueV;
  double E_hi_ueV;
};

struct OhmicParams {
  double eta;         // dimensionless coupling, >= 0
  double E_cut_ueV;   // soft cutoff energy, > 0
  CutoffSign cutoff = CutoffSign::negative;
};

struct OneOverFParams {
  double kappa_ueV2;  // 32 E_c^2/pi scale, > 0
  double alpha_f;     // background-charge coupling, >= 0
};

// One bath member together with its own hard band.  A NoiseModel is an
// ordered list of members: {Ohmic}, {OneOverF}, or the composite of both
// (the composite spectral density is the plain sum of the two terms).
struct NoiseMember {
  enum class Kind { ohmic, oneoverf };
  Kind kind;
  Band band;
  OhmicParams ohmic{};          // read when kind == ohmic
  OneOverFParams oneoverf{};    // read when kind == oneoverf
};

struct NoiseModel {
  std::vector<NoiseMember> members;

  static NoiseModel make_ohmic(const OhmicParams& p, const Band& band);
  static NoiseModel make_oneoverf(const OneOverFParams& p, const Band& band);
  static NoiseModel make_composite(const OhmicParams& po, const Band& ohmic_band,
                                   const OneOverFParams& pf, const Band& f_band);
};

// validates invariants (band ordering, parameter signs, at most one member
// of each kind); throws DomainError
void validate(const NoiseModel& model);

// elementary weights; E in ueV, E > 0
double weight_ohmic(double E_ueV, double eta, double E_cut_ueV,
                    CutoffSign cutoff = CutoffSign::negative);
double weight_oneoverf(double E_ueV, double kappa_ueV2, double alpha_f,
                       double T_K);

// model dispatch: sum of member weights, each contributing only inside its
// own band (band masking lives here, not in the integrator)
double weight(const NoiseModel& model, double E_ueV, double T_K);

// diagnostics; never consumed by the kernels
double spectral_density_J(const NoiseModel& model, double E_ueV, double T_K);
double power_spectrum_S(const NoiseModel& model, double E_ueV, double T_K);

// coth(x) for x > 0 with a two-term Laurent branch (1/x + x/3) below
// x = 1e-6; shared by the 1/f weight and the dephasing kernels so that the
// coth introduced by W_f cancels the kernel coth exactly in floating point
double coth_pos(double x);

}  // namespace jcq::noise
