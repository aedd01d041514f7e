#pragma once

// Administrative requests, authorization against the rule set, the transition
// function, query entailment and plan replay.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gurag/instance.hpp"

namespace gurag {

enum class RequestKind { kAddU, kDeleteU, kAddUG, kDeleteUG, kAssign, kRemove };

std::string_view requestKindName(RequestKind k);
Relation relationFor(RequestKind k);
bool isAddition(RequestKind k);

/// A single administrative request issued under one administrative role.
/// Field order doubles as the lexicographic request order.
struct Request {
  RequestKind kind = RequestKind::kAddU;
  GroupId group;        // AddUG/DeleteUG/Assign/Remove
  AttributeName attr;   // value requests
  AtomicValue value;    // value requests
  AdminRole role;

  static Request addU(AdminRole role, AttributeName att, AtomicValue val);
  static Request deleteU(AdminRole role, AttributeName att, AtomicValue val);
  static Request addUG(AdminRole role, GroupId g, AttributeName att, AtomicValue val);
  static Request deleteUG(AdminRole role, GroupId g, AttributeName att, AtomicValue val);
  static Request assign(AdminRole role, GroupId g);
  static Request remove(AdminRole role, GroupId g);

  friend auto operator<=>(const Request&, const Request&) = default;
  friend bool operator==(const Request&, const Request&) = default;
};

/// Renders the request in plan syntax, e.g. "addUG(ar,G1,roomAcc,2.01)".
std::string toString(const Request& r);

struct Plan {
  std::vector<Request> requests;

  bool empty() const noexcept { return requests.empty(); }
  std::size_t size() const noexcept { return requests.size(); }

  friend bool operator==(const Plan&, const Plan&) = default;
};

enum class QueryType { kStrict, kRelaxed };

std::string_view queryTypeName(QueryType t);

struct ReachabilityQuery {
  QueryType type = QueryType::kStrict;
  std::map<AttributeName, ValueSet> entries;

  friend bool operator==(const ReachabilityQuery&, const ReachabilityQuery&) = default;
};

/// Rule ids (ascending) whose relation, role and target match req and whose
/// precondition holds for the request's subject.
std::vector<std::size_t> authorizedRules(const DirectState& state,
                                         const GroupHierarchy& h,
                                         const RuleSet& rules,
                                         const Request& req);

/// The state update of req, ignoring authorization. Adding a present value or
/// removing an absent one leaves the state unchanged.
DirectState applyRequest(const DirectState& state, const Request& req);

struct Denial {
  enum class Reason { kNoMatchingRule, kPreconditionFailed };
  Reason reason = Reason::kNoMatchingRule;
  Request request;

  std::string describe() const;
};

struct Transition {
  DirectState state;
  std::size_t rule = 0;  // smallest authorizing rule id
};

using StepResult = std::variant<Transition, Denial>;

StepResult step(const DirectState& state, const GroupHierarchy& h,
                const RuleSet& rules, const Request& req);

bool evalQuery(const DirectState& state, const GroupHierarchy& h,
               const ReachabilityQuery& q);
bool evalQuery(const EffectiveView& view, const ReachabilityQuery& q);

/// Query referencing only declared attributes and in-scope values.
std::vector<Violation> validateQuery(const ProblemInstance& p,
                                     const ReachabilityQuery& q);
std::vector<Violation> validateRequest(const ProblemInstance& p,
                                       const Request& req);

struct PlanValid {
  DirectState finalState;
  std::vector<std::size_t> firedRules;
};
struct PlanInvalidAt {
  std::size_t index = 0;  // 1-based position of the failing request
  Denial denial;
};
struct PlanQueryUnsatisfied {
  DirectState finalState;
};

using PlanVerdict = std::variant<PlanValid, PlanInvalidAt, PlanQueryUnsatisfied>;

PlanVerdict validatePlan(const ProblemInstance& p, const Plan& plan,
                         const ReachabilityQuery& q);

bool isValid(const PlanVerdict& v);

/// States visited while replaying plan from the initial state, stopping at the
/// first unauthorized request. Element 0 is the initial state.
std::vector<DirectState> replayStates(const ProblemInstance& p, const Plan& plan);

}  // namespace gurag
