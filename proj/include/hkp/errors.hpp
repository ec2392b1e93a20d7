#pragma once

#include <stdexcept>
#include <string>

namespace hkp {

/// Malformed input: bad syntax, unknown names, incompatible shapes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that could not be computed.
class ComputationError : public std::runtime_error {
 public:
  ComputationError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  /// Short machine-readable tag, e.g. "unresolved-gap".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class EnumerationOverflow : public ComputationError {
 public:
  explicit EnumerationOverflow(const std::string& what)
      : ComputationError("enumeration-overflow", what) {}
};

class UnresolvedGap : public ComputationError {
 public:
  explicit UnresolvedGap(const std::string& what)
      : ComputationError("unresolved-gap", what) {}
};

class NotPositiveSemidefinite : public ComputationError {
 public:
  explicit NotPositiveSemidefinite(const std::string& what)
      : ComputationError("not-psd", what) {}
};

class ChainIdentityViolated : public ComputationError {
 public:
  explicit ChainIdentityViolated(const std::string& what)
      : ComputationError("chain-identity", what) {}
};

}  // namespace hkp
