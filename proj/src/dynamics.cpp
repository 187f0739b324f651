#include "jcq/dynamics.hpp"

#include <cmath>
#include <string>

#include "jcq/errors.hpp"

namespace jcq::dynamics {

namespace {

constexpr double kStateTol = 1e-12;

void validate_params(const DynamicsParams& p) {
  if (!(p.E_J_ueV > 0.0) || !std::isfinite(p.E_J_ueV)) {
    throw DomainError("E_J must be > 0 ueV");
  }
  if (!(p.b_squared >= 0.0) || !std::isfinite(p.b_squared)) {
    throw DomainError("b_squared must be >= 0 and finite");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("t must be >= 0 and finite, got " + std::to_string(t));
  }
}

}  // namespace

void validate(const QubitState& rho) {
  if (!std::isfinite(rho.rho00) || !std::isfinite(rho.rho11) ||
      !std::isfinite(rho.rho10.real()) || !std::isfinite(rho.rho10.imag())) {
    throw DomainError("density matrix entries must be finite");
  }
  if (rho.rho00 < -kStateTol || rho.rho00 > 1.0 + kStateTol ||
      rho.rho11 < -kStateTol || rho.rho11 > 1.0 + kStateTol) {
    throw DomainError("populations must lie in [0, 1]");
  }
  if (std::abs(rho.rho00 + rho.rho11 - 1.0) > kStateTol) {
    throw DomainError("density matrix trace must be 1 (within 1e-12)");
  }
  if (std::norm(rho.rho10) > rho.rho00 * rho.rho11 + kStateTol) {
    throw DomainError(
        "density matrix must be positive: |rho10|^2 <= rho00*rho11");
  }
}

QubitState from_bloch(double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  if (!(r2 <= 1.0 + kStateTol)) {
    throw DomainError("Bloch vector must satisfy x^2+y^2+z^2 <= 1");
  }
  // rho = (I + x sx + y sy + z sz)/2
  QubitState rho{0.5 * (1.0 + z), 0.5 * (1.0 - z),
                 {0.5 * x, 0.5 * y}};
  return rho;
}

double validity_limit(double E_J_ueV) {
  if (!(E_J_ueV > 0.0)) {
    throw DomainError("E_J must be > 0 ueV");
  }
  return 1.0 / E_J_ueV;
}

QubitState evolve(const QubitState& rho0, double t, const DynamicsParams& p,
                  EvolveInfo* info) {
  validate(rho0);
  validate_params(p);
  require_time(t);

  if (info != nullptr) {
    info->validity_limit_t = 1.0 / p.E_J_ueV;
    info->beyond_validity = t > info->validity_limit_t;
  }

  // g = e^{-B^2}; omg = 1 - g evaluated via expm1 so small B^2 keeps full
  // relative precision
  const double em = std::expm1(-p.b_squared);
  const double g = 1.0 + em;
  const double omg = -em;
  const double theta = p.E_J_ueV * t;
  const std::complex<double> eip{std::cos(theta), std::sin(theta)};

  QubitState out;
  out.rho11 = 0.5 * (rho0.rho00 * omg + rho0.rho11 * (1.0 + g));
  out.rho00 = 1.0 - out.rho11;
  out.rho10 = 0.5 * rho0.rho10 * (omg + eip * (1.0 + g));
  return out;
}

QubitState ideal_evolve(const QubitState& rho0, double t, double E_J_ueV) {
  validate(rho0);
  require_time(t);
  if (!(E_J_ueV > 0.0) || !std::isfinite(E_J_ueV)) {
    throw DomainError("E_J must be > 0 ueV");
  }
  const double theta = E_J_ueV * t;
  const std::complex<double> eip{std::cos(theta), std::sin(theta)};
  // populations are fixed points; the coherence just picks up the phase
  return {rho0.rho00, rho0.rho11, rho0.rho10 * eip};
}

Deviation deviation(const QubitState& rho0, double t,
                    const DynamicsParams& p) {
  validate(rho0);
  validate_params(p);
  require_time(t);

  const double omg = -std::expm1(-p.b_squared);
  const double theta = p.E_J_ueV * t;
  const std::complex<double> eip{std::cos(theta), std::sin(theta)};

  Deviation s;
  s.sigma11 = 0.5 * omg * (rho0.rho00 - rho0.rho11);
  s.sigma10 = 0.5 * rho0.rho10 * omg * (1.0 - eip);
  return s;
}

double norm_lambda(const Deviation& sigma) {
  return std::sqrt(std::norm(sigma.sigma10) + sigma.sigma11 * sigma.sigma11);
}

double norm_closed_form(const QubitState& rho0, double t,
                        const DynamicsParams& p) {
  validate(rho0);
  validate_params(p);
  require_time(t);

  const double omg = -std::expm1(-p.b_squared);
  const double dz = rho0.rho00 - rho0.rho11;
  const double sh = std::sin(0.5 * p.E_J_ueV * t);
  return 0.5 * omg *
         std::sqrt(dz * dz + 4.0 * std::norm(rho0.rho10) * sh * sh);
}

double decoherence_D(const DynamicsParams& p) {
  validate_params(p);
  // sup over initial states; the Bloch bound (rho00-rho11)^2 + 4|rho10|^2
  // <= 1 is saturated by diagonal pure states and sin^2 <= 1 by phase
  return 0.5 * -std::expm1(-p.b_squared);
}

}  // namespace jcq::dynamics
