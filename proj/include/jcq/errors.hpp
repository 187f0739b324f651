#pragma once

#include <stdexcept>
#include <string>

namespace jcq {

// invalid physical or model parameter (bad band, negative coupling, ...)
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// scenario / CLI configuration problem (CLI exit code 2)
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// quadrature failed to reach the requested tolerance (CLI exit code 3);
// carries the best estimate so callers can inspect how bad things are
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what_arg, double best, double achieved)
      : std::runtime_error(what_arg),
        best_estimate(best),
        achieved_rel_error(achieved) {}

  double best_estimate;
  double achieved_rel_error;
};

// filesystem / output failure (CLI exit code 4)
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jcq
