#pragma once

#include <stdexcept>
#include <string>

namespace maxdep {

// Argument outside the mathematical domain of an operation (q not in (0,1),
// theta <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid parameters when building a family, generator, margin or model.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller violated a documented contract (non-exchangeable family passed to
// the mixing diagnostic, zero standard error, degenerate cdf, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// No normalizer / rate / sampler is known for the requested object.
class NotAvailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Floating point cannot resolve the requested quantity.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxdep
