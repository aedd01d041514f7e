#include "gurag/transition.hpp"

#include <array>

namespace gurag {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {
    "addU", "deleteU", "addUG", "deleteUG", "assign", "remove"};

}  // namespace

std::string_view requestKindName(RequestKind k) {
  return kKindNames[static_cast<std::size_t>(k)];
}

Relation relationFor(RequestKind k) {
  switch (k) {
    case RequestKind::kAddU:
      return Relation::kCanAddU;
    case RequestKind::kDeleteU:
      return Relation::kCanDeleteU;
    case RequestKind::kAddUG:
      return Relation::kCanAddUG;
    case RequestKind::kDeleteUG:
      return Relation::kCanDeleteUG;
    case RequestKind::kAssign:
      return Relation::kCanAssign;
    case RequestKind::kRemove:
      return Relation::kCanRemove;
  }
  return Relation::kCanAddU;
}

bool isAddition(RequestKind k) {
  return k == RequestKind::kAddU || k == RequestKind::kAddUG ||
         k == RequestKind::kAssign;
}

Request Request::addU(AdminRole role, AttributeName att, AtomicValue val) {
  return {RequestKind::kAddU, {}, std::move(att), std::move(val), std::move(role)};
}
Request Request::deleteU(AdminRole role, AttributeName att, AtomicValue val) {
  return {RequestKind::kDeleteU, {}, std::move(att), std::move(val), std::move(role)};
}
Request Request::addUG(AdminRole role, GroupId g, AttributeName att, AtomicValue val) {
  return {RequestKind::kAddUG, std::move(g), std::move(att), std::move(val),
          std::move(role)};
}
Request Request::deleteUG(AdminRole role, GroupId g, AttributeName att,
                          AtomicValue val) {
  return {RequestKind::kDeleteUG, std::move(g), std::move(att), std::move(val),
          std::move(role)};
}
Request Request::assign(AdminRole role, GroupId g) {
  return {RequestKind::kAssign, std::move(g), {}, {}, std::move(role)};
}
Request Request::remove(AdminRole role, GroupId g) {
  return {RequestKind::kRemove, std::move(g), {}, {}, std::move(role)};
}

std::string toString(const Request& r) {
  std::string out(requestKindName(r.kind));
  out += '(' + r.role.str();
  switch (r.kind) {
    case RequestKind::kAddU:
    case RequestKind::kDeleteU:
      out += ',' + r.attr.str() + ',' + r.value.str();
      break;
    case RequestKind::kAddUG:
    case RequestKind::kDeleteUG:
      out += ',' + r.group.str() + ',' + r.attr.str() + ',' + r.value.str();
      break;
    case RequestKind::kAssign:
    case RequestKind::kRemove:
      out += ',' + r.group.str();
      break;
  }
  return out + ')';
}

std::string_view queryTypeName(QueryType t) {
  return t == QueryType::kStrict ? "strict" : "relaxed";
}

namespace {

bool targetMatches(const Rule& rule, const Request& req) {
  if (rule.relation != relationFor(req.kind) || rule.role != req.role) return false;
  if (isMembershipRelation(rule.relation)) return rule.group == req.group;
  return rule.attr == req.attr && rule.value == req.value;
}

Subject subjectOf(const Request& req) {
  if (req.kind == RequestKind::kAddUG || req.kind == RequestKind::kDeleteUG) {
    return Subject::ofGroup(req.group);
  }
  return Subject::user();
}

}  // namespace

std::vector<std::size_t> authorizedRules(const DirectState& state,
                                         const GroupHierarchy& h,
                                         const RuleSet& rules,
                                         const Request& req) {
  EffectiveView view(state, h);
  Subject subject = subjectOf(req);
  std::vector<std::size_t> out;
  for (const auto& rule : rules) {
    if (targetMatches(rule, req) && evalPrecondition(rule.pre, view, subject)) {
      out.push_back(rule.id);
    }
  }
  return out;
}

DirectState applyRequest(const DirectState& state, const Request& req) {
  DirectState next = state;
  switch (req.kind) {
    case RequestKind::kAddU:
      next.addUserValue(req.attr, req.value);
      break;
    case RequestKind::kDeleteU:
      next.removeUserValue(req.attr, req.value);
      break;
    case RequestKind::kAddUG:
      next.addGroupValue(req.group, req.attr, req.value);
      break;
    case RequestKind::kDeleteUG:
      next.removeGroupValue(req.group, req.attr, req.value);
      break;
    case RequestKind::kAssign:
      next.assignGroup(req.group);
      break;
    case RequestKind::kRemove:
      next.removeGroup(req.group);
      break;
  }
  return next;
}

std::string Denial::describe() const {
  std::string why = reason == Reason::kNoMatchingRule
                        ? "no rule matches the relation, role and target"
                        : "every matching rule's precondition is unsatisfied";
  return toString(request) + " is not authorized: " + why;
}

StepResult step(const DirectState& state, const GroupHierarchy& h,
                const RuleSet& rules, const Request& req) {
  auto fired = authorizedRules(state, h, rules, req);
  if (fired.empty()) {
    bool anyMatch = false;
    for (const auto& rule : rules) anyMatch = anyMatch || targetMatches(rule, req);
    return Denial{anyMatch ? Denial::Reason::kPreconditionFailed
                           : Denial::Reason::kNoMatchingRule,
                  req};
  }
  return Transition{applyRequest(state, req), fired.front()};
}

bool evalQuery(const EffectiveView& view, const ReachabilityQuery& q) {
  for (const auto& [att, vset] : q.entries) {
    ValueSet eff = view.userValues(att);
    bool ok = q.type == QueryType::kStrict ? eff == vset : isSubset(vset, eff);
    if (!ok) return false;
  }
  return true;
}

bool evalQuery(const DirectState& state, const GroupHierarchy& h,
               const ReachabilityQuery& q) {
  return evalQuery(EffectiveView(state, h), q);
}

std::vector<Violation> validateQuery(const ProblemInstance& p,
                                     const ReachabilityQuery& q) {
  std::vector<Violation> out;
  for (const auto& [att, vset] : q.entries) {
    auto it = p.scopes.find(att);
    if (it == p.scopes.end()) {
      out.push_back({"unknown-attribute", "query: unknown attribute '" + att.str() + "'"});
      continue;
    }
    for (const auto& v : vset) {
      if (!it->second.contains(v)) {
        out.push_back({"scope-violation", "query: value '" + v.str() +
                                              "' is outside the scope of '" +
                                              att.str() + "'"});
      }
    }
  }
  return out;
}

std::vector<Violation> validateRequest(const ProblemInstance& p,
                                       const Request& req) {
  std::vector<Violation> out;
  std::string where = "request " + toString(req);
  if (!p.roles.contains(req.role)) {
    out.push_back({"unknown-role", where + ": unknown role"});
  }
  bool needsGroup = req.kind != RequestKind::kAddU && req.kind != RequestKind::kDeleteU;
  if (needsGroup && !p.hierarchy.contains(req.group)) {
    out.push_back({"unknown-group", where + ": unknown group"});
  }
  bool needsValue = req.kind != RequestKind::kAssign && req.kind != RequestKind::kRemove;
  if (needsValue) {
    auto it = p.scopes.find(req.attr);
    if (it == p.scopes.end()) {
      out.push_back({"unknown-attribute", where + ": unknown attribute"});
    } else if (!it->second.contains(req.value)) {
      out.push_back({"scope-violation", where + ": value outside scope"});
    }
  }
  return out;
}

PlanVerdict validatePlan(const ProblemInstance& p, const Plan& plan,
                         const ReachabilityQuery& q) {
  DirectState state = p.initial;
  std::vector<std::size_t> fired;
  for (std::size_t i = 0; i < plan.requests.size(); ++i) {
    StepResult r = step(state, p.hierarchy, p.rules, plan.requests[i]);
    if (auto* denial = std::get_if<Denial>(&r)) {
      return PlanInvalidAt{i + 1, *denial};
    }
    auto& t = std::get<Transition>(r);
    state = std::move(t.state);
    fired.push_back(t.rule);
  }
  if (!evalQuery(state, p.hierarchy, q)) {
    return PlanQueryUnsatisfied{std::move(state)};
  }
  return PlanValid{std::move(state), std::move(fired)};
}

bool isValid(const PlanVerdict& v) { return std::holds_alternative<PlanValid>(v); }

std::vector<DirectState> replayStates(const ProblemInstance& p, const Plan& plan) {
  std::vector<DirectState> states{p.initial};
  for (const auto& req : plan.requests) {
    StepResult r = step(states.back(), p.hierarchy, p.rules, req);
    auto* t = std::get_if<Transition>(&r);
    if (!t) break;
    states.push_back(std::move(t->state));
  }
  return states;
}

}  // namespace gurag
