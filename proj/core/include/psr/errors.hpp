#pragma once

#include <stdexcept>
#include <string>

namespace psr {

// Operands live on different measure spaces or have mismatched lengths.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point lies outside the set where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an object cannot be built from the supplied parameters
// (unknown catalog name, non-convex composition, indefinite matrix, ...).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace psr
