#pragma once

#include <stdexcept>
#include <string>

namespace fmodularity {

/// Malformed input or configuration: bad shapes, out-of-range parameters,
/// unparsable files. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A value left the domain of a divergence family (log of a non-positive
/// distinguisher, infinite divergence, undefined null model). Exit code 3.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace fmodularity
