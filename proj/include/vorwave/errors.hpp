#ifndef VORWAVE_ERRORS_HPP
#define VORWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace vorwave {

// Invalid argument, configuration value, or precondition violation.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation requested at a non-removable singularity.
class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

// An iteration failed to converge; carries the last residual norm seen.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual(last_residual) {}
  double last_residual;
};

// A state lost an admissibility property mid-computation.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter scan found no feature; carries a printable record of the scan.
class ScanError : public std::runtime_error {
 public:
  ScanError(const std::string& what, std::string record)
      : std::runtime_error(what), scan_record(std::move(record)) {}
  std::string scan_record;
};

}  // namespace vorwave

#endif
