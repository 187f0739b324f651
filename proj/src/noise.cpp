#include "jcq/noise.hpp"

#include <cmath>
#include <string>

#include "jcq/errors.hpp"
#include "jcq/units.hpp"

namespace jcq::noise {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_energy(double E_ueV) {
  if (!(E_ueV > 0.0) || !std::isfinite(E_ueV)) {
    throw DomainError("mode energy must be > 0 ueV, got " +
                      std::to_string(E_ueV));
  }
}

void validate_band(const Band& b) {
  if (!(b.E_lo_ueV > 0.0) || !(b.E_hi_ueV > b.E_lo_ueV) ||
      !std::isfinite(b.E_hi_ueV)) {
    throw DomainError("band must satisfy 0 < E_lo < E_hi, got [" +
                      std::to_string(b.E_lo_ueV) + ", " +
                      std::to_string(b.E_hi_ueV) + "] ueV");
  }
}

bool in_band(const Band& b, double E) {
  return E >= b.E_lo_ueV && E <= b.E_hi_ueV;
}

double member_weight(const NoiseMember& m, double E_ueV, double T_K) {
  switch (m.kind) {
    case NoiseMember::Kind::ohmic:
      return weight_ohmic(E_ueV, m.ohmic.eta, m.ohmic.E_cut_ueV,
                          m.ohmic.cutoff);
    case NoiseMember::Kind::oneoverf:
      return weight_oneoverf(E_ueV, m.oneoverf.kappa_ueV2,
                             m.oneoverf.alpha_f, T_K);
  }
  throw DomainError("unknown noise member kind");
}

}  // namespace

double coth_pos(double x) {
  // two-term Laurent branch: coth(x) = 1/x + x/3 + O(x^3); the switch at
  // 1e-6 keeps the relative jump below 1e-18
  if (x < 1e-6) {
    return 1.0 / x + x / 3.0;
  }
  return 1.0 / std::tanh(x);
}

double weight_ohmic(double E_ueV, double eta, double E_cut_ueV,
                    CutoffSign cutoff) {
  require_energy(E_ueV);
  if (!(eta >= 0.0)) {
    throw DomainError("eta must be >= 0, got " + std::to_string(eta));
  }
  if (!(E_cut_ueV > 0.0)) {
    throw DomainError("E_cut must be > 0 ueV, got " +
                      std::to_string(E_cut_ueV));
  }
  const double s = (cutoff == CutoffSign::negative) ? -1.0 : 1.0;
  return eta * E_ueV * std::exp(s * E_ueV / E_cut_ueV);
}

double weight_oneoverf(double E_ueV, double kappa_ueV2, double alpha_f,
                       double T_K) {
  require_energy(E_ueV);
  if (!(kappa_ueV2 > 0.0)) {
    throw DomainError("kappa must be > 0 ueV^2, got " +
                      std::to_string(kappa_ueV2));
  }
  if (!(alpha_f >= 0.0)) {
    throw DomainError("alpha_f must be >= 0, got " + std::to_string(alpha_f));
  }
  // kappa*alpha_f/(E coth(E/2kT)); coth's pole cancels one power of E, so
  // the E -> 0 limit is kappa*alpha_f/(2 k_B T)
  const double two_kT = 2.0 * units::thermal_energy(T_K);
  return kappa_ueV2 * alpha_f / (E_ueV * coth_pos(E_ueV / two_kT));
}

NoiseModel NoiseModel::make_ohmic(const OhmicParams& p, const Band& band) {
  NoiseModel m;
  m.members.push_back({NoiseMember::Kind::ohmic, band, p, {}});
  validate(m);
  return m;
}

NoiseModel NoiseModel::make_oneoverf(const OneOverFParams& p,
                                     const Band& band) {
  NoiseModel m;
  m.members.push_back({NoiseMember::Kind::oneoverf, band, {}, p});
  validate(m);
  return m;
}

NoiseModel NoiseModel::make_composite(const OhmicParams& po,
                                      const Band& ohmic_band,
                                      const OneOverFParams& pf,
                                      const Band& f_band) {
  NoiseModel m;
  m.members.push_back({NoiseMember::Kind::ohmic, ohmic_band, po, {}});
  m.members.push_back({NoiseMember::Kind::oneoverf, f_band, {}, pf});
  validate(m);
  return m;
}

void validate(const NoiseModel& model) {
  if (model.members.empty()) {
    throw DomainError("noise model has no members");
  }
  int n_ohmic = 0;
  int n_oneoverf = 0;
  for (const NoiseMember& m : model.members) {
    validate_band(m.band);
    switch (m.kind) {
      case NoiseMember::Kind::ohmic:
        ++n_ohmic;
        if (!(m.ohmic.eta >= 0.0)) {
          throw DomainError("eta must be >= 0");
        }
        if (!(m.ohmic.E_cut_ueV > 0.0)) {
          throw DomainError("E_cut must be > 0");
        }
        break;
      case NoiseMember::Kind::oneoverf:
        ++n_oneoverf;
        if (!(m.oneoverf.kappa_ueV2 > 0.0)) {
          throw DomainError("kappa must be > 0");
        }
        if (!(m.oneoverf.alpha_f >= 0.0)) {
          throw DomainError("alpha_f must be >= 0");
        }
        break;
    }
  }
  // the composite spectral density has exactly two terms, one per kind
  if (n_ohmic > 1 || n_oneoverf > 1) {
    throw DomainError("composite model allows at most one member per kind");
  }
}

double weight(const NoiseModel& model, double E_ueV, double T_K) {
  require_energy(E_ueV);
  validate(model);
  double w = 0.0;
  for (const NoiseMember& m : model.members) {
    if (in_band(m.band, E_ueV)) {
      w += member_weight(m, E_ueV, T_K);
    }
  }
  return w;
}

double spectral_density_J(const NoiseModel& model, double E_ueV, double T_K) {
  return 0.5 * kPi * weight(model, E_ueV, T_K);
}

double power_spectrum_S(const NoiseModel& model, double E_ueV, double T_K) {
  const double two_kT = 2.0 * units::thermal_energy(T_K);
  return spectral_density_J(model, E_ueV, T_K) * coth_pos(E_ueV / two_kT);
}

}  // namespace jcq::noise
