#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "jcq/dynamics.hpp"
#include "jcq/errors.hpp"

using namespace jcq;
using dynamics::QubitState;

namespace {

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool state_close(const QubitState& a, const QubitState& b, double tol) {
  return std::abs(a.rho00 - b.rho00) <= tol &&
         std::abs(a.rho11 - b.rho11) <= tol &&
         std::abs(a.rho10 - b.rho10) <= tol;
}

}  // namespace

TEST_CASE("state validation") {
  CHECK_NOTHROW(dynamics::validate({1.0, 0.0, {0.0, 0.0}}));
  CHECK_NOTHROW(dynamics::validate({0.5, 0.5, {0.5, 0.0}}));
  CHECK_NOTHROW(dynamics::validate({0.7, 0.3, {0.1, 0.05}}));

  // trace != 1
  CHECK_THROWS_AS(dynamics::validate({0.6, 0.6, {0.0, 0.0}}), DomainError);
  // purity bound |rho10|^2 <= rho00 rho11
  CHECK_THROWS_AS(dynamics::validate({0.5, 0.5, {0.6, 0.0}}), DomainError);
  // populations outside [0, 1]
  CHECK_THROWS_AS(dynamics::validate({1.2, -0.2, {0.0, 0.0}}), DomainError);
  // non-finite entries
  CHECK_THROWS_AS(dynamics::validate({std::nan(""), 0.5, {0.0, 0.0}}),
                  DomainError);
}

TEST_CASE("bloch vector construction") {
  const QubitState up = dynamics::from_bloch(0.0, 0.0, 1.0);
  CHECK(up.rho00 == doctest::Approx(1.0));
  CHECK(up.rho11 == doctest::Approx(0.0));
  CHECK(std::abs(up.rho10) == doctest::Approx(0.0));

  const QubitState plus = dynamics::from_bloch(1.0, 0.0, 0.0);
  CHECK(plus.rho00 == doctest::Approx(0.5));
  CHECK(plus.rho10.real() == doctest::Approx(0.5));
  CHECK(plus.rho10.imag() == doctest::Approx(0.0));

  // the +1e-12 slack admits the unit sphere itself
  CHECK_NOTHROW(dynamics::from_bloch(0.6, 0.8, 0.0));
  CHECK_THROWS_AS(dynamics::from_bloch(1.0, 1.0, 0.0), DomainError);

  // mixed state stays valid
  CHECK_NOTHROW(dynamics::validate(dynamics::from_bloch(0.1, 0.2, -0.3)));
}

TEST_CASE("zero dephasing reduces to the ideal evolution") {
  const QubitState rho0{0.7, 0.3, {0.1, 0.05}};
  const dynamics::DynamicsParams p{51.8, 0.0};
  const double t = 0.01;
  const QubitState evolved = dynamics::evolve(rho0, t, p);
  const QubitState ideal = dynamics::ideal_evolve(rho0, t, 51.8);
  CHECK(state_close(evolved, ideal, 1e-15));

  // ideal evolution only rotates the coherence
  CHECK(ideal.rho00 == rho0.rho00);
  CHECK(ideal.rho11 == rho0.rho11);
  const std::complex<double> phase{std::cos(51.8 * t), std::sin(51.8 * t)};
  CHECK(std::abs(ideal.rho10 - rho0.rho10 * phase) <= 1e-15);

  const dynamics::Deviation sig = dynamics::deviation(rho0, t, p);
  CHECK(sig.sigma11 == 0.0);
  CHECK(std::abs(sig.sigma10) <= 1e-15);
  CHECK(dynamics::decoherence_D(p) == 0.0);
}

TEST_CASE("dephasing mixes populations toward 1/2") {
  const QubitState rho0{1.0, 0.0, {0.0, 0.0}};
  const dynamics::DynamicsParams p{51.8, 0.5};
  const QubitState rho = dynamics::evolve(rho0, 0.02, p);
  const double g = std::exp(-0.5);
  CHECK(rel_close(rho.rho00, 0.5 * (1.0 + g), 1e-14));
  CHECK(rel_close(rho.rho11, 0.5 * (1.0 - g), 1e-14));
  CHECK(rho.rho00 + rho.rho11 == doctest::Approx(1.0).epsilon(1e-14));
  // population difference contracts by exactly g
  CHECK(rel_close(rho.rho00 - rho.rho11, g * (rho0.rho00 - rho0.rho11),
                  1e-14));
}

TEST_CASE("deviation equals evolve minus ideal") {
  const QubitState rho0{0.6, 0.4, {0.2, -0.1}};
  const dynamics::DynamicsParams p{51.8, 0.01};
  const double t = 0.015;
  const QubitState evolved = dynamics::evolve(rho0, t, p);
  const QubitState ideal = dynamics::ideal_evolve(rho0, t, p.E_J_ueV);
  const dynamics::Deviation sig = dynamics::deviation(rho0, t, p);
  CHECK(std::abs(sig.sigma11 - (evolved.rho11 - ideal.rho11)) <= 1e-15);
  CHECK(std::abs(sig.sigma10 - (evolved.rho10 - ideal.rho10)) <= 1e-15);
}

TEST_CASE("norm identities and the worst-case bound") {
  const dynamics::DynamicsParams p{51.8, 0.02};
  const double t = 0.018;
  const QubitState states[] = {
      {1.0, 0.0, {0.0, 0.0}},
      {0.0, 1.0, {0.0, 0.0}},
      {0.5, 0.5, {0.5, 0.0}},
      {0.5, 0.5, {0.0, -0.5}},
      {0.7, 0.3, {0.1, 0.05}},
      {0.25, 0.75, {-0.2, 0.3}},
  };
  const double d = dynamics::decoherence_D(p);
  for (const QubitState& rho0 : states) {
    CAPTURE(rho0.rho00);
    const dynamics::Deviation sig = dynamics::deviation(rho0, t, p);
    const double n1 = dynamics::norm_lambda(sig);
    const double n2 = dynamics::norm_closed_form(rho0, t, p);
    CHECK(rel_close(n1, n2, 1e-12));
    CHECK(n1 <= d + 1e-15);
  }
  // diagonal pure states saturate the bound
  CHECK(rel_close(dynamics::norm_closed_form({1.0, 0.0, {0.0, 0.0}}, t, p), d,
                  1e-14));
  CHECK(rel_close(dynamics::norm_closed_form({0.0, 1.0, {0.0, 0.0}}, t, p), d,
                  1e-14));
}

TEST_CASE("decoherence measure D") {
  CHECK(dynamics::decoherence_D({51.8, 0.0}) == 0.0);
  // small-B^2 expansion: D -> B^2/2
  CHECK(rel_close(dynamics::decoherence_D({51.8, 2e-9}), 1e-9, 1e-8));
  // large-B^2 saturation just below 1/2 (B^2 = 30 keeps e^{-B^2} ~ 9e-14
  // representable next to 1; much larger and D rounds to exactly 1/2)
  const double d_sat = dynamics::decoherence_D({51.8, 30.0});
  CHECK(d_sat < 0.5);
  CHECK(d_sat == doctest::Approx(0.5).epsilon(1e-12));
  // monotone in B^2
  CHECK(dynamics::decoherence_D({51.8, 0.01}) <
        dynamics::decoherence_D({51.8, 0.02}));

  CHECK_THROWS_AS(dynamics::decoherence_D({51.8, -0.1}), DomainError);
  CHECK_THROWS_AS(dynamics::decoherence_D({0.0, 0.1}), DomainError);
}

TEST_CASE("validity window bookkeeping") {
  CHECK(rel_close(dynamics::validity_limit(51.8), 0.019305019305019305,
                  1e-15));
  const QubitState rho0{1.0, 0.0, {0.0, 0.0}};
  const dynamics::DynamicsParams p{51.8, 0.01};

  dynamics::EvolveInfo info;
  (void)dynamics::evolve(rho0, 0.01, p, &info);
  CHECK_FALSE(info.beyond_validity);
  CHECK(rel_close(info.validity_limit_t, 1.0 / 51.8, 1e-15));

  (void)dynamics::evolve(rho0, 0.05, p, &info);
  CHECK(info.beyond_validity);

  // the info pointer is optional
  CHECK_NOTHROW(dynamics::evolve(rho0, 0.05, p));
}

TEST_CASE("evolution preserves trace and positivity") {
  const dynamics::DynamicsParams p{51.8, 0.3};
  for (double t : {0.001, 0.01, 0.019, 0.1}) {
    const QubitState rho = dynamics::evolve({0.8, 0.2, {0.3, 0.2}}, t, p);
    CHECK(rho.rho00 + rho.rho11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho.rho00 >= -1e-15);
    CHECK(rho.rho11 >= -1e-15);
    CHECK(std::norm(rho.rho10) <= rho.rho00 * rho.rho11 + 1e-12);
  }
}

TEST_CASE("invalid dynamics parameters") {
  const QubitState rho0{1.0, 0.0, {0.0, 0.0}};
  CHECK_THROWS_AS(dynamics::evolve(rho0, -0.01, {51.8, 0.1}), DomainError);
  CHECK_THROWS_AS(dynamics::evolve(rho0, 0.01, {-51.8, 0.1}), DomainError);
  CHECK_THROWS_AS(dynamics::evolve(rho0, 0.01, {51.8, -0.1}), DomainError);
  CHECK_THROWS_AS(dynamics::evolve({0.9, 0.3, {0.0, 0.0}}, 0.01, {51.8, 0.1}),
                  DomainError);
  CHECK_THROWS_AS(dynamics::ideal_evolve(rho0, 0.01, 0.0), DomainError);
}
