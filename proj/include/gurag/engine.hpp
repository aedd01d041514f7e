#pragma once

// Engine selection shared by the command line, the fuzzer and the bindings.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gurag/reach_exhaustive.hpp"
#include "gurag/reach_poly.hpp"

namespace gurag {

enum class Engine { kAuto, kNonNeg, kSrd, kBfs };

std::string_view engineName(Engine e);
std::optional<Engine> parseEngine(std::string_view name);

struct SolveReport {
  enum class Outcome { kReachable, kUnreachable, kBoundExceeded };

  Engine engine = Engine::kBfs;             // the engine that decided
  std::optional<Engine> fallbackFrom;       // auto mode retried with bfs
  Outcome outcome = Outcome::kUnreachable;
  Plan plan;
  std::string reason;  // unreachable reason code or exceeded bound; empty when reachable
  std::string detail;
  std::size_t statesExplored = 0;  // bfs only
  std::vector<GroupId> discardedGroups;
  std::int64_t elapsedMs = 0;
};

std::string_view outcomeName(SolveReport::Outcome o);

/// The engine auto mode would try first for this instance and query.
Engine selectEngine(const ProblemInstance& p, const ReachabilityQuery& q);

/// Runs the requested engine. Explicit polynomial engines throw
/// RestrictionViolation when inapplicable. In auto mode an srd answer of
/// unreachable is re-checked with bfs whenever the group phase discarded
/// cyclic groups, since that discard can lose plans.
SolveReport solve(const ProblemInstance& p, const ReachabilityQuery& q, Engine engine,
                  const SearchBounds& bounds = {}, const SearchOptions& options = {});

}  // namespace gurag
