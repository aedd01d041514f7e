#pragma once

// Bounded breadth-first search over the full transition system. Used as the
// ground-truth oracle and as the fallback engine for unrestricted rule sets.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "gurag/transition.hpp"

namespace gurag {

struct SearchBounds {
  std::size_t maxDepth = 32;
  std::size_t maxStates = std::size_t{1} << 20;
  std::int64_t maxMillis = 30000;
};

struct SearchOptions {
  /// Worker threads for frontier expansion. The outcome does not depend on it.
  unsigned threads = 1;
};

enum class Bound { kDepth, kStates, kTime };

std::string_view boundName(Bound b);

struct SearchOutcome {
  enum class Kind { kReachable, kUnreachable, kBoundExceeded };

  Kind kind = Kind::kUnreachable;
  Plan plan;                    // kReachable
  std::optional<Bound> bound;   // kBoundExceeded
  std::size_t statesExplored = 0;

  bool reachable() const noexcept { return kind == Kind::kReachable; }
};

/// Sorted, tab/newline separated rendering of every fact of the state.
/// Injective: identical keys iff equal states.
std::string canonicalEncode(const DirectState& state);

/// Inverse of canonicalEncode. Throws InputError on a malformed key.
DirectState decodeState(std::string_view key);

/// Shortest plan, ties broken by the lexicographic order of the request
/// sequence. Unreachable is reported only when the reachable space was
/// closed within the bounds.
SearchOutcome bfsSolve(const ProblemInstance& p, const ReachabilityQuery& q,
                       const SearchBounds& bounds = {},
                       const SearchOptions& options = {});

struct ReachableStates {
  std::map<std::string, std::size_t> depth;  // canonical key -> minimal depth
  std::optional<Bound> exceeded;             // set if the space was cut short

  bool complete() const noexcept { return !exceeded.has_value(); }
};

ReachableStates enumerateReachable(const ProblemInstance& p,
                                   const SearchBounds& bounds = {},
                                   const SearchOptions& options = {});

}  // namespace gurag
