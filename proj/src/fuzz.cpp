#include "gurag/fuzz.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gurag/ordering_graph.hpp"

namespace gurag {

std::string_view fuzzClassName(FuzzClass c) {
  switch (c) {
    case FuzzClass::kNonNeg:
      return "nonneg";
    case FuzzClass::kSrd:
      return "srd";
    case FuzzClass::kAny:
      return "any";
  }
  return "any";
}

std::optional<FuzzClass> parseFuzzClass(std::string_view name) {
  for (FuzzClass c : {FuzzClass::kNonNeg, FuzzClass::kSrd, FuzzClass::kAny}) {
    if (fuzzClassName(c) == name) return c;
  }
  return std::nullopt;
}

std::string fuzzShapeHelp() {
  using S = FuzzShape;
  return "Instance shape: up to " + std::to_string(S::kMaxAttributes) + " attributes with up to " +
         std::to_string(S::kMaxValues) + " values each, up to " + std::to_string(S::kMaxGroups) +
         " groups, 1 to " + std::to_string(S::kMaxRules) + " rules with up to " +
         std::to_string(S::kMaxLiterals) +
         " conjuncts.\n"
         "nonneg: add/assign rules, positive conjuncts, deletions with p=0.12.\n"
         "srd: add/assign rules only, one rule per target, direct conjuncts negated with p=0.3;\n"
         "     assign rules use group conjuncts only.\n"
         "any: all six relations (deletions p=0.3), any conjunct, negation p=0.3.\n"
         "Each instance carries 4 queries (2 targets x strict/relaxed). The first target is the\n"
         "effective view of a reachable state that differs from the start (a deepest one with\n"
         "p=0.5); the second is random. Instances are resampled until their reachable space\n"
         "closes within depth " +
         std::to_string(S::kOracleDepth) + " and " + std::to_string(S::kOracleStates) +
         " states and contains such a state.\n";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Distribution helpers written out by hand: std distributions are not
/// guaranteed to produce the same sequence across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : engine_() % n; }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 engine_;
};

class Generator {
 public:
  Generator(FuzzClass c, Rng& rng) : cls_(c), rng_(rng) {}

  FuzzCase make() {
    FuzzCase fc;
    ProblemInstance& p = fc.instance;
    std::size_t nAttrs = 1 + rng_.below(FuzzShape::kMaxAttributes);
    for (std::size_t a = 0; a < nAttrs; ++a) {
      AttributeName att("a" + std::to_string(a));
      std::size_t nVals = 1 + rng_.below(FuzzShape::kMaxValues);
      for (std::size_t v = 0; v < nVals; ++v) {
        p.scopes[att].insert(AtomicValue("v" + std::to_string(v)));
        pairs_.emplace_back(att, AtomicValue("v" + std::to_string(v)));
      }
    }
    std::size_t nGroups = rng_.below(FuzzShape::kMaxGroups + 1);
    GroupSet groups;
    for (std::size_t g = 0; g < nGroups; ++g) {
      groups_.emplace_back("G" + std::to_string(g));
      groups.insert(groups_.back());
    }
    std::set<SeniorityEdge> edges;
    for (std::size_t i = 0; i < nGroups; ++i) {
      for (std::size_t j = i + 1; j < nGroups; ++j) {
        if (rng_.chance(0.3)) edges.insert({groups_[i], groups_[j]});
      }
    }
    p.hierarchy = GroupHierarchy(groups, edges);
    p.roles = {AdminRole("r0"), AdminRole("r1")};

    for (const auto& [att, v] : pairs_) {
      if (rng_.chance(0.25)) p.initial.addUserValue(att, v);
      for (const auto& g : groups_) {
        if (rng_.chance(0.2)) p.initial.addGroupValue(g, att, v);
      }
    }
    for (const auto& g : groups_) {
      if (rng_.chance(0.3)) p.initial.assignGroup(g);
    }

    std::size_t nRules = 1 + rng_.below(FuzzShape::kMaxRules);
    for (std::size_t i = 0; i < nRules; ++i) addRule(p.rules);

    for (int t = 0; t < 2; ++t) {
      std::map<AttributeName, ValueSet> entries;
      for (const auto& [att, scope] : p.scopes) {
        if (entries.empty() || rng_.chance(0.5)) {
          ValueSet vs;
          for (const auto& v : scope) {
            if (rng_.chance(0.5)) vs.insert(v);
          }
          entries[att] = vs;
        }
      }
      fc.queries.push_back({QueryType::kStrict, entries});
      fc.queries.push_back({QueryType::kRelaxed, entries});
    }
    return fc;
  }

 private:
  void addRule(RuleSet& rules) {
    AdminRole role(rng_.chance(0.5) ? "r0" : "r1");
    std::vector<Relation> options = {Relation::kCanAddU, Relation::kCanAddUG};
    if (!groups_.empty()) options.push_back(Relation::kCanAssign);
    double pDelete = cls_ == FuzzClass::kNonNeg ? FuzzShape::kNonNegDeleteProbability
                     : cls_ == FuzzClass::kAny  ? FuzzShape::kAnyDeleteProbability
                                                : 0.0;
    if (rng_.chance(pDelete)) {
      options = {Relation::kCanDeleteU, Relation::kCanDeleteUG};
      if (!groups_.empty()) options.push_back(Relation::kCanRemove);
    }
    Relation rel = rng_.pick(options);

    if (isMembershipRelation(rel)) {
      GroupId g = rng_.pick(groups_);
      if (cls_ == FuzzClass::kSrd && !assignTargets_.insert(g).second) return;
      rules.addMembershipRule(rel, role, precondition(rel), g);
    } else {
      auto [att, v] = rng_.pick(pairs_);
      if (cls_ == FuzzClass::kSrd && !addTargets_.insert({att, v}).second) return;
      rules.addValueRule(rel, role, precondition(rel), att, v);
    }
  }

  Precondition precondition(Relation rel) {
    std::size_t n = rng_.below(FuzzShape::kMaxLiterals + 1);
    std::vector<Precondition> parts;
    bool groupLiterals = isMembershipRelation(rel) && !groups_.empty();
    for (std::size_t i = 0; i < n; ++i) {
      Precondition lit;
      if (cls_ == FuzzClass::kSrd) {
        if (rel == Relation::kCanAssign) {
          lit = Precondition::directGroup(rng_.pick(groups_));
        } else {
          auto [att, v] = rng_.pick(pairs_);
          lit = Precondition::directValue(att, v);
        }
      } else {
        std::size_t kinds = groupLiterals ? 4 : 2;
        std::size_t k = rng_.below(kinds);
        auto [att, v] = rng_.pick(pairs_);
        switch (k) {
          case 0:
            lit = Precondition::directValue(att, v);
            break;
          case 1:
            lit = Precondition::effectiveValue(att, v);
            break;
          case 2:
            lit = Precondition::directGroup(rng_.pick(groups_));
            break;
          default:
            lit = Precondition::effectiveGroup(rng_.pick(groups_));
            break;
        }
      }
      if (cls_ != FuzzClass::kNonNeg && rng_.chance(FuzzShape::kNegationProbability)) {
        lit = Precondition::negate(lit);
      }
      parts.push_back(lit);
    }
    return Precondition::conj(parts);
  }

  FuzzClass cls_;
  Rng& rng_;
  std::vector<std::pair<AttributeName, AtomicValue>> pairs_;
  std::vector<GroupId> groups_;
  std::set<std::pair<AttributeName, AtomicValue>> addTargets_;
  std::set<GroupId> assignTargets_;
};

// Effective values of a reachable state that differ from the start, so that
// each instance carries a query with a non-trivial witness.
std::optional<std::map<AttributeName, ValueSet>> reachedTarget(const ProblemInstance& p,
                                                const ReachableStates& all, Rng& rng) {
  std::vector<AttributeName> atts;
  for (const auto& [att, scope] : p.scopes) {
    if (atts.empty() || rng.chance(0.5)) atts.push_back(att);
  }
  auto view = [&](const DirectState& s) {
    EffectiveView v(s, p.hierarchy);
    std::map<AttributeName, ValueSet> entries;
    for (const auto& att : atts) entries[att] = v.userValues(att);
    return entries;
  };
  const auto start = view(p.initial);
  std::vector<std::pair<std::size_t, std::map<AttributeName, ValueSet>>> pool;
  std::size_t maxDepth = 0;
  for (const auto& [key, d] : all.depth) {
    auto entries = view(decodeState(key));
    if (entries == start) continue;
    maxDepth = std::max(maxDepth, d);
    pool.emplace_back(d, std::move(entries));
  }
  if (pool.empty()) return std::nullopt;
  if (rng.chance(0.5)) {
    std::erase_if(pool, [&](const auto& e) { return e.first != maxDepth; });
  }
  return pool[rng.below(pool.size())].second;
}

}  // namespace

FuzzCase generateCase(FuzzClass c, std::uint64_t seed, std::size_t index) {
  Rng rng(splitmix64(seed ^ splitmix64(index)));
  SearchBounds bounds{FuzzShape::kOracleDepth, FuzzShape::kOracleStates, 60000};
  for (;;) {
    FuzzCase fc = Generator(c, rng).make();
    fc.index = index;
    ReachableStates all = enumerateReachable(fc.instance, bounds);
    if (!all.complete()) continue;
    auto target = reachedTarget(fc.instance, all, rng);
    if (!target) continue;
    fc.queries[0] = {QueryType::kStrict, *target};
    fc.queries[1] = {QueryType::kRelaxed, *target};
    return fc;
  }
}

bool orderingGraphsAcyclic(const RuleSet& rules) {
  using Node = std::string;
  auto valueNode = [](Relation rel, const AttributeName& a, const AtomicValue& v) {
    return std::string(rel == Relation::kCanAddUG ? "G:" : "U:") + a.str() + "=" + v.str();
  };
  auto groupNode = [](const GroupId& g) { return "M:" + g.str(); };

  OrderingGraph<Node> graph;
  std::vector<std::pair<Node, const Rule*>> targets;
  for (const auto& r : rules) {
    Node t;
    if (r.relation == Relation::kCanAddU || r.relation == Relation::kCanAddUG) {
      t = valueNode(r.relation, r.attr, r.value);
    } else if (r.relation == Relation::kCanAssign) {
      t = groupNode(r.group);
    } else {
      continue;
    }
    graph.addVertex(t);
    targets.emplace_back(t, &r);
  }
  for (const auto& [t, r] : targets) {
    Relation scope = r->relation == Relation::kCanAddUG ? Relation::kCanAddUG : Relation::kCanAddU;
    forEachLiteral(r->pre, [&](const Precondition& lit, bool positive) {
      Node n = lit.isGroupLiteral() ? groupNode(lit.group())
                                    : valueNode(scope, lit.attribute(), lit.value());
      if (positive) {
        graph.addEdge(n, t, EdgeTag::kPositivePrecondition);
      } else if (n != t) {
        graph.addEdge(t, n, EdgeTag::kNegationBlocks);
      }
    });
  }
  return !graph.hasCycle();
}

FuzzStats runFuzz(FuzzClass c, std::uint64_t seed, std::size_t count,
                  const SearchOptions& options) {
  FuzzStats stats;
  stats.cls = c;
  stats.seed = seed;
  SearchBounds oracleBounds{FuzzShape::kOracleDepth, FuzzShape::kOracleStates, 60000};
  Engine planner = c == FuzzClass::kNonNeg ? Engine::kNonNeg
                   : c == FuzzClass::kSrd  ? Engine::kSrd
                                           : Engine::kAuto;
  for (std::size_t i = 0; i < count; ++i) {
    FuzzCase fc = generateCase(c, seed, i);
    ++stats.instances;
    bool acyclic = orderingGraphsAcyclic(fc.instance.rules);
    if (!acyclic) ++stats.cyclicInstances;
    for (std::size_t qi = 0; qi < fc.queries.size(); ++qi) {
      const auto& q = fc.queries[qi];
      FuzzRecord rec;
      rec.index = i;
      rec.query = qi;
      rec.type = q.type;
      rec.acyclic = acyclic;
      ++stats.queries;

      SearchOutcome oracle = bfsSolve(fc.instance, q, oracleBounds, options);
      rec.oracleReachable = oracle.reachable();
      if (oracle.reachable() && !isValid(validatePlan(fc.instance, oracle.plan, q))) {
        rec.planValid = false;
      }
      try {
        SolveReport r = solve(fc.instance, q, planner, oracleBounds, options);
        rec.planner = engineName(r.engine);
        rec.plannerReachable = r.outcome == SolveReport::Outcome::kReachable;
        if (rec.plannerReachable && !isValid(validatePlan(fc.instance, r.plan, q))) {
          rec.planValid = false;
        }
      } catch (const RestrictionViolation& e) {
        rec.planner = "declined";
        rec.declineReason = e.what();
      }
      if (!rec.planValid) ++stats.invalidPlans;
      if (rec.planner == "declined") {
        ++stats.declined;
      } else if (rec.plannerReachable == rec.oracleReachable) {
        ++stats.agreements;
      } else {
        ++stats.disagreements;
      }
      stats.records.push_back(std::move(rec));
    }
  }
  return stats;
}

}  // namespace gurag
