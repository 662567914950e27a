#pragma once

#include <stdexcept>

namespace defectqm {

/// Parameter outside its physical domain, or a non-finite potential sample.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kummer series with c at a nonpositive integer.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested wavefunction for labels that do not terminate the series.
class NotAnEigenfunctionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested level lies above the continuum threshold of the box.
class UnboundStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace defectqm
