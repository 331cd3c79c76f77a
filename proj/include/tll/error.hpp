#pragma once

#include <stdexcept>
#include <string>

namespace tll {

enum class ErrorKind {
  InvalidSpec,
  UnsupportedPeriod,
  Domain,
  DensityBelowOne,
  Contract,
  Budget,
  InvalidMeasure,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` identifies the failure class.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace tll
