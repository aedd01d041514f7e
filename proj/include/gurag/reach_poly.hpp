#pragma once

// Polynomial-time planners for the restricted schemes: a guarded forward
// fixpoint for negation-free rule sets, and a group phase followed by an
// attribute phase for deletion-free single-rule-direct rule sets.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gurag/transition.hpp"

namespace gurag {

enum class UnreachableReason {
  kExtraValuesPresent,
  kMissingRule,
  kNegativeConjunctPresent,
  kForbiddenIncomingEdge,
  kCycleInValset,
  kFixpointExhausted,
  kSurplusNotDeletable,
};

std::string_view reasonName(UnreachableReason r);

struct PlanResult {
  bool reachable = false;
  Plan plan;                                // meaningful when reachable
  std::optional<UnreachableReason> reason;  // set when unreachable
  std::string detail;
  /// Groups dropped by the group phase because they sat on an ordering cycle.
  std::vector<GroupId> discardedGroups;

  static PlanResult reached(Plan plan);
  static PlanResult unreachable(UnreachableReason reason, std::string detail);
};

/// Forward fixpoint over canAddU / canAddUG / canAssign. Throws
/// RestrictionViolation if any rule uses negation.
///
/// A strict query over a rule set with deletions is not left to the fixpoint,
/// which never deletes and would wrongly reject surplus values that a delete
/// rule could clear. Without negation every plan can be reordered into all
/// additions followed by all deletions, so that case is decided exactly:
/// for each candidate final membership set, add everything reachable except
/// values shown to be undeletable, then order the surplus deletions backwards
/// from the target. Cost is exponential in the number of groups only.
PlanResult solveNoNegation(const ProblemInstance& p, const ReachabilityQuery& q);

/// Assign requests for every viable candidate group in dependency order.
/// Never reports unreachable.
PlanResult groupPhase(const ProblemInstance& p, const ReachabilityQuery& q);

/// Adds the missing query values starting from startState.
PlanResult attrPhase(const ProblemInstance& p, const DirectState& startState,
                     const ReachabilityQuery& q);

/// groupPhase (G1+ only), replay, then attrPhase; the plans are concatenated.
PlanResult solveSRdNoDelete(const ProblemInstance& p, const ReachabilityQuery& q);

}  // namespace gurag
