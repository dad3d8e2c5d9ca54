#pragma once

// Runtime configuration shared by the CLI subcommands.  Values priority:
// built-in defaults < config file (--config) < environment (SE2SR_*) <
// explicit command-line flags (CLI11 semantics).

#include <stdexcept>
#include <string>

namespace se2sr {

struct RunConfig {
  double kernel_tol = 1e-12;  // reported; kernel cutoffs are compiled in
  double ode_tol = 1e-12;     // forward-integration tolerance
  double solver_tol = 1e-9;   // shooting-solver endpoint tolerance
  std::string format = "csv";  // csv | json
  int n = 500;                 // default grid size for samplers
  long seed = 12345;           // randomized suites (selftest)
  int threads = 0;             // 0 = library/OpenMP default
  bool degrees = false;        // interpret angle flags as degrees

  void validate() const {
    if (!(kernel_tol > 0.0) || !(ode_tol > 0.0) || !(solver_tol > 0.0)) {
      throw std::domain_error("config: tolerances must be positive");
    }
    if (format != "csv" && format != "json") {
      throw std::domain_error("config: format must be csv or json");
    }
    if (n < 1) throw std::domain_error("config: n must be >= 1");
  }

  // Converts an angle flag value to radians per the degrees setting.
  double angle(double v) const { return degrees ? v * 0.017453292519943295 : v; }
};

}  // namespace se2sr
