#include "gurag/reach_poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "gurag/ordering_graph.hpp"

namespace gurag {

std::string_view reasonName(UnreachableReason r) {
  switch (r) {
    case UnreachableReason::kExtraValuesPresent:
      return "extra-values-present";
    case UnreachableReason::kMissingRule:
      return "missing-rule";
    case UnreachableReason::kNegativeConjunctPresent:
      return "negative-conjunct-present";
    case UnreachableReason::kForbiddenIncomingEdge:
      return "forbidden-incoming-edge";
    case UnreachableReason::kCycleInValset:
      return "cycle-in-valset";
    case UnreachableReason::kFixpointExhausted:
      return "fixpoint-exhausted";
    case UnreachableReason::kSurplusNotDeletable:
      return "surplus-not-deletable";
  }
  return "unknown";
}

PlanResult PlanResult::reached(Plan plan) {
  PlanResult r;
  r.reachable = true;
  r.plan = std::move(plan);
  return r;
}

PlanResult PlanResult::unreachable(UnreachableReason reason, std::string detail) {
  PlanResult r;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

namespace {

std::string join(const ValueSet& vs) {
  std::string out = "{";
  for (const auto& v : vs) {
    if (out.size() > 1) out += ',';
    out += v.str();
  }
  return out + '}';
}

/// Strict-mode guard shared by both planners: the user's current effective
/// values of every queried attribute already lie within the query.
std::optional<PlanResult> checkNoExtras(const EffectiveView& view,
                                        const ReachabilityQuery& q) {
  if (q.type != QueryType::kStrict) return std::nullopt;
  for (const auto& [att, vset] : q.entries) {
    ValueSet eff = view.userValues(att);
    if (!isSubset(eff, vset)) {
      return PlanResult::unreachable(
          UnreachableReason::kExtraValuesPresent,
          "effective " + att.str() + " = " + join(eff) + " exceeds " + join(vset) +
              " and values cannot be removed");
    }
  }
  return std::nullopt;
}

/// A value may be added under a strict query only if it is wanted there.
bool admissible(const ReachabilityQuery& q, const AttributeName& att,
                const AtomicValue& val) {
  if (q.type != QueryType::kStrict) return true;
  auto it = q.entries.find(att);
  return it == q.entries.end() || it->second.contains(val);
}

bool groupAdmissible(const EffectiveView& view, const ReachabilityQuery& q,
                     const GroupId& g) {
  if (q.type != QueryType::kStrict) return true;
  for (const auto& [att, vset] : q.entries) {
    if (!isSubset(view.groupValues(g, att), vset)) return false;
  }
  return true;
}

void requireSrdNoDelete(const RestrictionFlags& flags) {
  if (!flags.noDeletion) {
    throw RestrictionViolation("rule set contains deletion rules");
  }
  if (!flags.singleRuleDirect) {
    throw RestrictionViolation(
        "rule set is not single-rule-direct (duplicate add/assign rules or "
        "non-direct conjuncts)");
  }
}

/// Replays plan from start, throwing InvariantFailure on a denied request.
DirectState replayOrThrow(const ProblemInstance& p, DirectState state,
                          const Plan& plan, std::string_view phase) {
  for (const auto& req : plan.requests) {
    StepResult r = step(state, p.hierarchy, p.rules, req);
    if (auto* d = std::get_if<Denial>(&r)) {
      throw InvariantFailure(std::string(phase) + " produced an invalid plan: " +
                             d->describe());
    }
    state = std::move(std::get<Transition>(r).state);
  }
  return state;
}

/// Decides a strict query for a negation-free rule set that has deletions.
/// Facts are add requests with the role cleared; the target is everything
/// added that the query does not forbid, and the surplus is deleted in an
/// order found by growing the target backwards.
class SurplusPlanner {
 public:
  SurplusPlanner(const ProblemInstance& p, const ReachabilityQuery& q) : p_(p), q_(q) {
    for (const Rule* r : p.rules.ordered()) {
      switch (r->relation) {
        case Relation::kCanAddU:
          adds_.push_back(Request::addU(r->role, r->attr, r->value));
          break;
        case Relation::kCanAddUG:
          for (const auto& g : p.groups()) {
            adds_.push_back(Request::addUG(r->role, g, r->attr, r->value));
          }
          break;
        case Relation::kCanAssign:
          adds_.push_back(Request::assign(r->role, r->group));
          break;
        default:
          break;
      }
    }
  }

  PlanResult solve() {
    // Final memberships can only come from groups the user can ever hold.
    const auto [top, unused] = forward({});
    std::vector<GroupId> held(top.userGroups().begin(), top.userGroups().end());
    if (held.size() > 16) {
      throw RestrictionViolation("too many assignable groups for the exact strict analysis");
    }
    for (unsigned long mask = 0; mask < (1UL << held.size()); ++mask) {
      GroupSet keep;
      for (std::size_t i = 0; i < held.size(); ++i) {
        if (mask & (1UL << i)) keep.insert(held[i]);
      }
      if (auto plan = tryMemberships(keep)) return PlanResult::reached(std::move(*plan));
    }
    return PlanResult::unreachable(
        UnreachableReason::kSurplusNotDeletable,
        "no membership choice leaves a target whose surplus can all be deleted");
  }

 private:
  static Request factOf(Request r) {
    r.role = AdminRole();
    switch (r.kind) {
      case RequestKind::kDeleteU: r.kind = RequestKind::kAddU; break;
      case RequestKind::kDeleteUG: r.kind = RequestKind::kAddUG; break;
      case RequestKind::kRemove: r.kind = RequestKind::kAssign; break;
      default: break;
    }
    return r;
  }

  static bool present(const DirectState& s, const Request& f) {
    switch (f.kind) {
      case RequestKind::kAddU: return s.userValues(f.attr).contains(f.value);
      case RequestKind::kAddUG: return s.groupValues(f.group, f.attr).contains(f.value);
      default: return s.userGroups().contains(f.group);
    }
  }

  static std::vector<Request> factsOf(const DirectState& s) {
    std::vector<Request> out;
    for (const auto& [att, vals] : s.userAttrs()) {
      for (const auto& v : vals) out.push_back(factOf(Request::addU({}, att, v)));
    }
    for (const auto& [g, attrs] : s.groupAttrs()) {
      for (const auto& [att, vals] : attrs) {
        for (const auto& v : vals) out.push_back(factOf(Request::addUG({}, g, att, v)));
      }
    }
    for (const auto& g : s.userGroups()) out.push_back(factOf(Request::assign({}, g)));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool authorized(const DirectState& s, const Request& req) const {
    return !authorizedRules(s, p_.hierarchy, p_.rules, req).empty();
  }

  /// Largest state reachable by additions that avoid the excluded facts.
  std::pair<DirectState, std::vector<Request>> forward(const std::set<Request>& excluded) const {
    DirectState s = p_.initial;
    std::vector<Request> fired;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& req : adds_) {
        Request f = factOf(req);
        if (present(s, f) || excluded.contains(f) || !authorized(s, req)) continue;
        s = applyRequest(s, req);
        fired.push_back(req);
        changed = true;
      }
    }
    return {std::move(s), std::move(fired)};
  }

  bool forbidden(const Request& f, const GroupSet& keep, const GroupSet& effective) const {
    if (f.kind == RequestKind::kAssign) return !keep.contains(f.group);
    if (f.kind == RequestKind::kAddUG && !effective.contains(f.group)) return false;
    auto it = q_.entries.find(f.attr);
    return it != q_.entries.end() && !it->second.contains(f.value);
  }

  std::vector<Request> deletionsFor(const Request& f) const {
    std::vector<Request> out;
    for (const auto& r : p_.rules) {
      if (r.relation == Relation::kCanDeleteU && f.kind == RequestKind::kAddU &&
          r.attr == f.attr && r.value == f.value) {
        out.push_back(Request::deleteU(r.role, f.attr, f.value));
      } else if (r.relation == Relation::kCanDeleteUG && f.kind == RequestKind::kAddUG &&
                 r.attr == f.attr && r.value == f.value) {
        out.push_back(Request::deleteUG(r.role, f.group, f.attr, f.value));
      } else if (r.relation == Relation::kCanRemove && f.kind == RequestKind::kAssign &&
                 r.group == f.group) {
        out.push_back(Request::remove(r.role, f.group));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<Plan> tryMemberships(const GroupSet& keep) const {
    GroupSet effective;
    for (const auto& g : keep) {
      const auto& closure = p_.hierarchy.juniorClosure(g);
      effective.insert(closure.begin(), closure.end());
    }
    const std::set<Request> initial = [&] {
      auto v = factsOf(p_.initial);
      return std::set<Request>(v.begin(), v.end());
    }();

    std::set<Request> excluded;
    while (true) {
      auto [reached, adds] = forward(excluded);
      if (!std::includes(reached.userGroups().begin(), reached.userGroups().end(),
                         keep.begin(), keep.end())) {
        return std::nullopt;
      }
      DirectState target;
      std::vector<Request> surplus;
      for (const auto& f : factsOf(reached)) {
        if (forbidden(f, keep, effective)) {
          surplus.push_back(f);
        } else {
          target = applyRequest(target, f);
        }
      }
      // Every feasible final state lies within target, and effective values
      // only grow with the state.
      if (!evalQuery(target, p_.hierarchy, q_)) return std::nullopt;

      // Grow backwards from target: a fact can be deleted last among the rest
      // if its deletion is authorized with only it re-added.
      DirectState grown = target;
      std::vector<Request> deletes;
      std::set<Request> cleared;
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& f : surplus) {
          if (cleared.contains(f)) continue;
          DirectState with = applyRequest(grown, f);
          for (const auto& del : deletionsFor(f)) {
            if (!authorized(with, del)) continue;
            deletes.push_back(del);
            grown = std::move(with);
            cleared.insert(f);
            grew = true;
            break;
          }
        }
      }
      if (cleared.size() == surplus.size()) {
        Plan plan;
        plan.requests = std::move(adds);
        plan.requests.insert(plan.requests.end(), deletes.rbegin(), deletes.rend());
        return plan;
      }
      // A stuck fact cannot be cleared under any smaller target either, so it
      // must never be added; if it is there from the start this choice fails.
      for (const auto& f : surplus) {
        if (cleared.contains(f)) continue;
        if (initial.contains(f)) return std::nullopt;
        excluded.insert(f);
      }
    }
  }

  const ProblemInstance& p_;
  const ReachabilityQuery& q_;
  std::vector<Request> adds_;
};

}  // namespace

PlanResult solveNoNegation(const ProblemInstance& p, const ReachabilityQuery& q) {
  RestrictionFlags flags = checkRestrictions(p.rules);
  if (!flags.noNegation) {
    throw RestrictionViolation("rule set uses negation");
  }

  DirectState state = p.initial;
  {
    EffectiveView view(state, p.hierarchy);
    if (evalQuery(view, q)) return PlanResult::reached({});
    if (q.type == QueryType::kStrict && !flags.noDeletion) {
      PlanResult r = SurplusPlanner(p, q).solve();
      if (r.reachable) replayOrThrow(p, p.initial, r.plan, "surplus planner");
      return r;
    }
    if (auto bad = checkNoExtras(view, q)) return *bad;
  }

  Plan plan;
  const auto ordered = p.rules.ordered();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule* r : ordered) {
      std::vector<Request> fire;
      EffectiveView view(state, p.hierarchy);
      switch (r->relation) {
        case Relation::kCanAddU:
          if (!state.userValues(r->attr).contains(r->value) &&
              admissible(q, r->attr, r->value) &&
              evalPrecondition(r->pre, view, Subject::user())) {
            fire.push_back(Request::addU(r->role, r->attr, r->value));
          }
          break;
        case Relation::kCanAddUG:
          if (!admissible(q, r->attr, r->value)) break;
          for (const auto& g : view.effectiveGroups()) {
            if (!state.groupValues(g, r->attr).contains(r->value) &&
                evalPrecondition(r->pre, view, Subject::ofGroup(g))) {
              fire.push_back(Request::addUG(r->role, g, r->attr, r->value));
            }
          }
          break;
        case Relation::kCanAssign:
          if (!state.userGroups().contains(r->group) &&
              groupAdmissible(view, q, r->group) &&
              evalPrecondition(r->pre, view, Subject::user())) {
            fire.push_back(Request::assign(r->role, r->group));
          }
          break;
        default:
          break;  // deletions never help without negation
      }
      for (auto& req : fire) {
        state = applyRequest(state, req);
        plan.requests.push_back(std::move(req));
        changed = true;
        if (evalQuery(state, p.hierarchy, q)) {
          return PlanResult::reached(std::move(plan));
        }
      }
    }
  }
  return PlanResult::unreachable(UnreachableReason::kFixpointExhausted,
                                 "no further rule applies and the query is unmet");
}

PlanResult groupPhase(const ProblemInstance& p, const ReachabilityQuery& q) {
  requireSrdNoDelete(checkRestrictions(p.rules));
  const DirectState& state = p.initial;
  EffectiveView view(state, p.hierarchy);

  std::map<GroupId, const Rule*> candidates;
  for (const Rule* r : p.rules.ofRelation(Relation::kCanAssign)) {
    const GroupId& g = r->group;
    if (state.userGroups().contains(g) || !groupAdmissible(view, q, g)) continue;
    bool ok = true;
    for (const auto& c : r->pre.conjuncts()) {
      bool positive = c.kind() != Precondition::Kind::kNot;
      const Precondition& lit = positive ? c : c.child();
      if (lit.kind() == Precondition::Kind::kDirectGroup) {
        if (positive && lit.group() == g) ok = false;
        if (!positive && state.userGroups().contains(lit.group())) ok = false;
      } else if (lit.kind() == Precondition::Kind::kDirectVal) {
        // Attribute conjuncts are judged once, against the starting state.
        if (state.userValues(lit.attribute()).contains(lit.value()) != positive) ok = false;
      }
    }
    if (ok) candidates.emplace(g, r);
  }

  // Drop candidates whose positive group conjuncts can never be satisfied.
  auto prune = [&] {
    bool again = true;
    while (again) {
      again = false;
      for (auto it = candidates.begin(); it != candidates.end();) {
        bool ok = true;
        for (const auto& c : it->second->pre.conjuncts()) {
          if (c.kind() == Precondition::Kind::kDirectGroup &&
              !state.userGroups().contains(c.group()) && !candidates.contains(c.group())) {
            ok = false;
          }
        }
        if (ok) {
          ++it;
        } else {
          it = candidates.erase(it);
          again = true;
        }
      }
    }
  };

  std::vector<GroupId> discarded;
  OrderingGraph<GroupId> graph;
  for (;;) {
    prune();
    graph = OrderingGraph<GroupId>();
    for (const auto& [g, r] : candidates) graph.addVertex(g);
    for (const auto& [g, r] : candidates) {
      for (const auto& c : r->pre.conjuncts()) {
        if (c.kind() == Precondition::Kind::kDirectGroup) {
          graph.addEdge(c.group(), g, EdgeTag::kPositivePrecondition);
        } else if (c.kind() == Precondition::Kind::kNot &&
                   c.child().kind() == Precondition::Kind::kDirectGroup &&
                   c.child().group() != g) {
          graph.addEdge(g, c.child().group(), EdgeTag::kNegationBlocks);
        }
      }
    }
    auto cyclic = graph.cyclicVertices();
    if (cyclic.empty()) break;
    for (const auto& g : cyclic) {
      candidates.erase(g);
      discarded.push_back(g);
    }
  }

  Plan plan;
  const auto order = graph.topologicalOrder();
  for (const auto& g : *order) {
    plan.requests.push_back(Request::assign(candidates.at(g)->role, g));
  }
  PlanResult result = PlanResult::reached(std::move(plan));
  std::sort(discarded.begin(), discarded.end());
  result.discardedGroups = std::move(discarded);
  return result;
}

namespace {

using Pair = std::pair<AttributeName, AtomicValue>;

struct ScopedPair {
  std::optional<GroupId> scope;  // nullopt = the user
  AttributeName attr;
  AtomicValue value;

  friend auto operator<=>(const ScopedPair&, const ScopedPair&) = default;
  friend bool operator==(const ScopedPair&, const ScopedPair&) = default;
};

std::string describe(const ScopedPair& sp) {
  std::string where = sp.scope ? "group " + sp.scope->str() : std::string("user");
  return sp.attr.str() + "=" + sp.value.str() + " on " + where;
}

class AttrPlanner {
 public:
  AttrPlanner(const ProblemInstance& p, const DirectState& start,
              const ReachabilityQuery& q)
      : p_(p), state_(start), q_(q) {
    for (const auto& r : p.rules) {
      if (r.relation == Relation::kCanAddU || r.relation == Relation::kCanAddUG) {
        addRule_.emplace(Pair{r.attr, r.value}, &r);
      }
    }
  }

  PlanResult run() {
    EffectiveView view(state_, p_.hierarchy);
    if (evalQuery(view, q_)) return PlanResult::reached({});
    if (auto bad = checkNoExtras(view, q_)) return *bad;

    const GroupSet effGroups = view.effectiveGroups();
    for (const auto& [att, vset] : q_.entries) {
      ValueSet eff = view.userValues(att);
      for (const auto& v : vset) {
        if (eff.contains(v)) continue;
        if (auto failure = cover({att, v}, effGroups)) return *failure;
      }
    }

    Plan plan;
    for (const auto& [scope, vertices] : chosen_) {
      OrderingGraph<ScopedPair> graph = buildGraph(vertices);
      auto order = graph.topologicalOrder();
      if (!order) {
        return PlanResult::unreachable(
            UnreachableReason::kCycleInValset,
            "required values on " +
                (scope ? "group " + scope->str() : std::string("user")) +
                " depend on each other cyclically");
      }
      for (const auto& sp : *order) {
        const Rule* r = addRule_.at({sp.attr, sp.value});
        plan.requests.push_back(
            sp.scope ? Request::addUG(r->role, *sp.scope, sp.attr, sp.value)
                     : Request::addU(r->role, sp.attr, sp.value));
      }
    }
    return PlanResult::reached(std::move(plan));
  }

 private:
  const ValueSet& directIn(const std::optional<GroupId>& scope,
                           const AttributeName& att) const {
    return scope ? state_.groupValues(*scope, att) : state_.userValues(att);
  }

  /// Finds a scope in which pair can be added and records its closure.
  std::optional<PlanResult> cover(const Pair& pair, const GroupSet& effGroups) {
    auto it = addRule_.find(pair);
    if (it == addRule_.end()) {
      return PlanResult::unreachable(
          UnreachableReason::kMissingRule,
          "no rule adds " + pair.first.str() + "=" + pair.second.str());
    }
    std::vector<std::optional<GroupId>> scopes;
    if (it->second->relation == Relation::kCanAddU) {
      scopes.push_back(std::nullopt);
    } else {
      for (const auto& g : effGroups) scopes.push_back(g);
      if (scopes.empty()) {
        return PlanResult::unreachable(
            UnreachableReason::kMissingRule,
            pair.first.str() + "=" + pair.second.str() +
                " is only added to groups and the user has no effective group");
      }
    }

    std::optional<PlanResult> firstFailure;
    for (const auto& scope : scopes) {
      std::set<ScopedPair> closure;
      std::optional<PlanResult> failure = closeIn(scope, pair, closure);
      if (!failure) {
        // Merge with what this scope already needs and recheck the ordering.
        std::set<ScopedPair> merged = chosen_[scope];
        merged.insert(closure.begin(), closure.end());
        if (buildGraph(merged).hasCycle()) {
          failure = PlanResult::unreachable(
              UnreachableReason::kCycleInValset,
              "adding " + describe({scope, pair.first, pair.second}) +
                  " needs a cyclic ordering of required values");
          if (chosen_[scope].empty()) chosen_.erase(scope);
        } else {
          chosen_[scope] = std::move(merged);
          return std::nullopt;
        }
      }
      if (!firstFailure) firstFailure = std::move(failure);
    }
    return firstFailure;
  }

  /// Backward closure of positive direct conjuncts within one scope, followed
  /// by the per-scope checks that do not need the ordering graph.
  std::optional<PlanResult> closeIn(const std::optional<GroupId>& scope,
                                    const Pair& root, std::set<ScopedPair>& out) {
    const Relation wanted = scope ? Relation::kCanAddUG : Relation::kCanAddU;
    std::vector<Pair> work{root};
    out.insert({scope, root.first, root.second});
    while (!work.empty()) {
      Pair cur = work.back();
      work.pop_back();
      auto it = addRule_.find(cur);
      if (it == addRule_.end() || it->second->relation != wanted) {
        return PlanResult::unreachable(
            UnreachableReason::kMissingRule,
            "no rule adds " + describe({scope, cur.first, cur.second}));
      }
      if (q_.type == QueryType::kStrict && !admissible(q_, cur.first, cur.second)) {
        return PlanResult::unreachable(
            UnreachableReason::kForbiddenIncomingEdge,
            "required " + describe({scope, root.first, root.second}) + " depends on " +
                describe({scope, cur.first, cur.second}) +
                ", which the query excludes");
      }
      for (const auto& c : it->second->pre.conjuncts()) {
        bool positive = c.kind() != Precondition::Kind::kNot;
        const Precondition& lit = positive ? c : c.child();
        if (lit.kind() != Precondition::Kind::kDirectVal) continue;
        bool present = directIn(scope, lit.attribute()).contains(lit.value());
        if (!positive) {
          if (present) {
            return PlanResult::unreachable(
                UnreachableReason::kNegativeConjunctPresent,
                "adding " + describe({scope, cur.first, cur.second}) + " requires " +
                    lit.attribute().str() + "=" + lit.value().str() + " to be absent");
          }
          continue;
        }
        if (present) continue;
        ScopedPair next{scope, lit.attribute(), lit.value()};
        if (out.insert(next).second) work.push_back({lit.attribute(), lit.value()});
      }
    }
    return std::nullopt;
  }

  OrderingGraph<ScopedPair> buildGraph(const std::set<ScopedPair>& vertices) const {
    OrderingGraph<ScopedPair> g;
    for (const auto& v : vertices) g.addVertex(v);
    for (const auto& v : vertices) {
      const Rule* r = addRule_.at({v.attr, v.value});
      for (const auto& c : r->pre.conjuncts()) {
        if (c.kind() == Precondition::Kind::kDirectVal) {
          g.addEdge({v.scope, c.attribute(), c.value()}, v,
                    EdgeTag::kPositivePrecondition);
        } else if (c.kind() == Precondition::Kind::kNot &&
                   c.child().kind() == Precondition::Kind::kDirectVal &&
                   !(c.child().attribute() == v.attr && c.child().value() == v.value)) {
          // A rule negating its own target only says "not yet added".
          g.addEdge(v, {v.scope, c.child().attribute(), c.child().value()},
                    EdgeTag::kNegationBlocks);
        }
      }
    }
    return g;
  }

  const ProblemInstance& p_;
  const DirectState& state_;
  const ReachabilityQuery& q_;
  std::map<Pair, const Rule*> addRule_;
  std::map<std::optional<GroupId>, std::set<ScopedPair>> chosen_;
};

}  // namespace

PlanResult attrPhase(const ProblemInstance& p, const DirectState& startState,
                     const ReachabilityQuery& q) {
  requireSrdNoDelete(checkRestrictions(p.rules));
  PlanResult result = AttrPlanner(p, startState, q).run();
  if (result.reachable) {
    DirectState end = replayOrThrow(p, startState, result.plan, "attribute phase");
    if (!evalQuery(end, p.hierarchy, q)) {
      throw InvariantFailure("attribute phase plan does not satisfy the query");
    }
  }
  return result;
}

PlanResult solveSRdNoDelete(const ProblemInstance& p, const ReachabilityQuery& q) {
  RestrictionFlags flags = checkRestrictions(p.rules);
  requireSrdNoDelete(flags);
  if (evalQuery(p.initial, p.hierarchy, q)) return PlanResult::reached({});
  if (flags.instanceLevel != SchemeLevel::kG1Plus) {
    return attrPhase(p, p.initial, q);
  }
  PlanResult groups = groupPhase(p, q);
  DirectState mid = replayOrThrow(p, p.initial, groups.plan, "group phase");
  PlanResult attrs = attrPhase(p, mid, q);
  attrs.discardedGroups = groups.discardedGroups;
  if (attrs.reachable) {
    attrs.plan.requests.insert(attrs.plan.requests.begin(),
                               groups.plan.requests.begin(), groups.plan.requests.end());
  }
  return attrs;
}

}  // namespace gurag
