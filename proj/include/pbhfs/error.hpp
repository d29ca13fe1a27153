#pragma once

#include <stdexcept>
#include <string>

namespace pbhfs {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Out-of-range argument to a generator, solver or metric.
class ParameterError : public Error {
public:
  using Error::Error;
};

// Instance or schedule document failed validation; `field()` names the
// offending entry (e.g. "job_sizes[3]").
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

// Problem too large for exhaustive enumeration.
class SizeGuardError : public Error {
public:
  using Error::Error;
};

} // namespace pbhfs
