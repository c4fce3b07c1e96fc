#pragma once

#include <stdexcept>
#include <string>

namespace affres {

/// Bad input to an operation (zero where a unit is required, length
/// mismatch, non-prime modulus, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested computation is larger than the configured budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resistance certificate cannot be issued at the requested modulus.
class NotCertifiable : public std::runtime_error {
 public:
  NotCertifiable(const std::string& what, std::string advisory_min_p)
      : std::runtime_error(what), advisory_min_p_(std::move(advisory_min_p)) {}

  const std::string& advisory_min_p() const noexcept { return advisory_min_p_; }

 private:
  std::string advisory_min_p_;
};

}  // namespace affres
