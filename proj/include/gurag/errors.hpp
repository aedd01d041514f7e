#pragma once

#include <stdexcept>

namespace gurag {

/// Malformed or unresolvable input (unknown names, scope violations, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's contract (e.g. evaluated a group literal
/// against a group subject).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The rule set does not satisfy the restrictions an engine requires.
class RestrictionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An engine produced something its own contract rules out, e.g. a plan that
/// fails replay.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gurag
