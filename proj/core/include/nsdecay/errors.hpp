#pragma once

#include <stdexcept>
#include <string>

namespace nsdecay {

/// Invalid parameters or inconsistent configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (e.g. delta <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Query outside the range covered by a recorded series.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Field shapes that do not match their grid.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite coefficients during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time_reached, const std::string& what)
      : std::runtime_error(what), time_reached_(time_reached) {}

  double time_reached() const noexcept { return time_reached_; }

 private:
  double time_reached_;
};

}  // namespace nsdecay
