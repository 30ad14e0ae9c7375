#pragma once

#include <stdexcept>
#include <string>

namespace alphafair {

// Raised when a utility (or a quantity derived from one) leaves the domain on
// which alpha fairness is defined. Argument errors use std::invalid_argument.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace alphafair
