#include "gurag/engine.hpp"

#include <chrono>

namespace gurag {

std::string_view engineName(Engine e) {
  switch (e) {
    case Engine::kAuto:
      return "auto";
    case Engine::kNonNeg:
      return "nonneg";
    case Engine::kSrd:
      return "srd";
    case Engine::kBfs:
      return "bfs";
  }
  return "auto";
}

std::optional<Engine> parseEngine(std::string_view name) {
  for (Engine e : {Engine::kAuto, Engine::kNonNeg, Engine::kSrd, Engine::kBfs}) {
    if (engineName(e) == name) return e;
  }
  return std::nullopt;
}

std::string_view outcomeName(SolveReport::Outcome o) {
  switch (o) {
    case SolveReport::Outcome::kReachable:
      return "reachable";
    case SolveReport::Outcome::kUnreachable:
      return "unreachable";
    case SolveReport::Outcome::kBoundExceeded:
      return "bound-exceeded";
  }
  return "unreachable";
}

Engine selectEngine(const ProblemInstance& p, const ReachabilityQuery& /*q*/) {
  RestrictionFlags f = checkRestrictions(p.rules);
  if (f.noNegation) return Engine::kNonNeg;
  if (f.noDeletion && f.singleRuleDirect) return Engine::kSrd;
  return Engine::kBfs;
}

namespace {

SolveReport fromPlanResult(Engine e, PlanResult r) {
  SolveReport out;
  out.engine = e;
  out.outcome = r.reachable ? SolveReport::Outcome::kReachable
                            : SolveReport::Outcome::kUnreachable;
  out.plan = std::move(r.plan);
  if (r.reason) out.reason = reasonName(*r.reason);
  out.detail = std::move(r.detail);
  out.discardedGroups = std::move(r.discardedGroups);
  return out;
}

SolveReport runBfs(const ProblemInstance& p, const ReachabilityQuery& q,
                   const SearchBounds& bounds, const SearchOptions& options) {
  SearchOutcome s = bfsSolve(p, q, bounds, options);
  SolveReport out;
  out.engine = Engine::kBfs;
  out.statesExplored = s.statesExplored;
  switch (s.kind) {
    case SearchOutcome::Kind::kReachable:
      out.outcome = SolveReport::Outcome::kReachable;
      out.plan = std::move(s.plan);
      break;
    case SearchOutcome::Kind::kUnreachable:
      out.outcome = SolveReport::Outcome::kUnreachable;
      out.reason = "state-space-exhausted";
      out.detail = "no reachable state satisfies the query";
      break;
    case SearchOutcome::Kind::kBoundExceeded:
      out.outcome = SolveReport::Outcome::kBoundExceeded;
      out.reason = boundName(*s.bound);
      out.detail = "search stopped at " + out.reason + " before deciding";
      break;
  }
  return out;
}

}  // namespace

SolveReport solve(const ProblemInstance& p, const ReachabilityQuery& q, Engine engine,
                  const SearchBounds& bounds, const SearchOptions& options) {
  auto start = std::chrono::steady_clock::now();
  SolveReport out;
  Engine chosen = engine == Engine::kAuto ? selectEngine(p, q) : engine;
  switch (chosen) {
    case Engine::kNonNeg:
      out = fromPlanResult(chosen, solveNoNegation(p, q));
      break;
    case Engine::kSrd:
      out = fromPlanResult(chosen, solveSRdNoDelete(p, q));
      if (engine == Engine::kAuto && out.outcome == SolveReport::Outcome::kUnreachable &&
          !out.discardedGroups.empty()) {
        auto discarded = out.discardedGroups;
        out = runBfs(p, q, bounds, options);
        out.fallbackFrom = Engine::kSrd;
        out.discardedGroups = std::move(discarded);
      }
      break;
    default:
      out = runBfs(p, q, bounds, options);
      break;
  }
  out.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return out;
}

}  // namespace gurag
