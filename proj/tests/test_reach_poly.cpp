#include <gtest/gtest.h>

#include "gurag/fuzz.hpp"
#include "gurag/reach_exhaustive.hpp"
#include "gurag/reach_poly.hpp"
#include "support.hpp"

namespace gurag {
namespace {

using namespace gurag::testing;

constexpr const char* kSkills = R"(
attr skills scope { c, java }
role ar
user {
  skills = { c }
}
rules {
  rule canAddU skills : ar , c in direct(skills) -> java
}
query strict { e_skills(u) = { c, java } }
query strict { e_skills(u) = { c } }
query strict { e_skills(u) = { java } }
query relaxed { e_skills(u) = { java } }
)";

bool oracleReachable(const SourceDocument& doc, std::size_t qi) {
  SearchOutcome o = bfsSolve(doc.instance, doc.queries.at(qi));
  EXPECT_NE(o.kind, SearchOutcome::Kind::kBoundExceeded);
  return o.reachable();
}

TEST(SolveNoNegation, AddsTheMissingSkill) {
  auto doc = parseOrThrow(kSkills);
  PlanResult r = solveNoNegation(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "addU(ar,skills,java)");
  EXPECT_TRUE(oracleReachable(doc, 0));
}

TEST(SolveNoNegation, AlreadySatisfied) {
  auto doc = parseOrThrow(kSkills);
  PlanResult r = solveNoNegation(doc.instance, doc.queries[1]);
  ASSERT_TRUE(r.reachable);
  EXPECT_TRUE(r.plan.empty());
}

TEST(SolveNoNegation, StrictSurplusWithoutDeletes) {
  auto doc = parseOrThrow(kSkills);
  PlanResult r = solveNoNegation(doc.instance, doc.queries[2]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kExtraValuesPresent);
  EXPECT_FALSE(oracleReachable(doc, 2));
}

TEST(SolveNoNegation, RelaxedIgnoresSurplus) {
  auto doc = parseOrThrow(kSkills);
  PlanResult r = solveNoNegation(doc.instance, doc.queries[3]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "addU(ar,skills,java)");
}

TEST(SolveNoNegation, RejectsNegation) {
  auto doc = fixture("room_admin.gurag");
  EXPECT_THROW(solveNoNegation(doc.instance, doc.queries[0]), RestrictionViolation);
}

TEST(SolveNoNegation, BobSkillsChain) {
  auto doc = fixture("bob.gurag");
  PlanResult r = solveNoNegation(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "addU(ar,skills,python); addU(ar,skills,cpp)");
}

TEST(SolveNoNegation, StrictGuardSkipsForbiddenAdditions) {
  auto doc = parseOrThrow(R"(
attr a scope { x, y, z }
role ar
rules {
  rule canAddU a : ar , true -> x
  rule canAddU a : ar , true -> y
  rule canAddU a : ar , y in direct(a) -> z
}
query strict { e_a(u) = { x, z } }
query relaxed { e_a(u) = { x, z } }
)");
  PlanResult strict = solveNoNegation(doc.instance, doc.queries[0]);
  EXPECT_FALSE(strict.reachable);
  EXPECT_EQ(strict.reason, UnreachableReason::kFixpointExhausted);
  EXPECT_FALSE(oracleReachable(doc, 0));
  PlanResult relaxed = solveNoNegation(doc.instance, doc.queries[1]);
  EXPECT_TRUE(relaxed.reachable);
}

// Strict queries over rule sets with deletions: add, then clear the surplus.
constexpr const char* kDeletes = R"(
attr a scope { x, y, z }
group G
role ar
user {
  a = { x }
}
rules {
  rule canAddU a : ar , x in direct(a) -> y
  rule canAddU a : ar , y in direct(a) -> z
  rule canDeleteU a : ar , z in direct(a) -> x
  rule canDeleteU a : ar , x in direct(a) -> y
}
query strict { e_a(u) = { z } }
query strict { e_a(u) = { y, z } }
query strict { e_a(u) = { x, z } }
)";

TEST(SolveNoNegation, DeletesSurplusInWorkableOrder) {
  auto doc = parseOrThrow(kDeletes);
  PlanResult r = solveNoNegation(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable) << r.detail;
  EXPECT_EQ(render(r.plan),
            "addU(ar,a,y); addU(ar,a,z); deleteU(ar,a,y); deleteU(ar,a,x)");
  EXPECT_TRUE(isValid(validatePlan(doc.instance, r.plan, doc.queries[0])));
  EXPECT_TRUE(oracleReachable(doc, 0));
}

TEST(SolveNoNegation, OtherStrictTargetsAgreeWithOracle) {
  auto doc = parseOrThrow(kDeletes);
  for (std::size_t qi = 1; qi < doc.queries.size(); ++qi) {
    PlanResult r = solveNoNegation(doc.instance, doc.queries[qi]);
    EXPECT_EQ(r.reachable, oracleReachable(doc, qi)) << qi;
  }
}

TEST(SolveNoNegation, UndeletableInitialSurplus) {
  auto doc = parseOrThrow(R"(
attr a scope { x, y }
role ar
user {
  a = { x }
}
rules {
  rule canAddU a : ar , true -> y
  rule canDeleteU a : ar , x in direct(a) -> y
}
query strict { e_a(u) = { y } }
)");
  PlanResult r = solveNoNegation(doc.instance, doc.queries[0]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kSurplusNotDeletable);
  EXPECT_FALSE(oracleReachable(doc, 0));
}

TEST(SolveNoNegation, DroppingMembershipClearsGroupSurplus) {
  auto doc = parseOrThrow(R"(
attr a scope { x, y }
group G
role ar
user {
  groups = { G }
}
groupstate G {
  a = { x }
}
rules {
  rule canAddU a : ar , x in effective(a) -> y
  rule canRemove : ar , y in direct(a) -> G
}
query strict { e_a(u) = { y } }
)");
  PlanResult r = solveNoNegation(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "addU(ar,a,y); remove(ar,G)");
  EXPECT_TRUE(oracleReachable(doc, 0));
}

// Group phase.
TEST(GroupPhase, NegationOrdersAssignments) {
  auto doc = parseOrThrow(R"(
attr a scope { x }
group A
group B
role ar
rules {
  rule canAssign : ar , true -> B
  rule canAssign : ar , not(B in directUg) -> A
}
query strict { e_a(u) = { } }
)");
  PlanResult r = groupPhase(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "assign(ar,A); assign(ar,B)");
  EXPECT_TRUE(isValid(validatePlan(doc.instance, r.plan, doc.queries[0])));

  // Only this order reaches both memberships.
  Plan reversed;
  reversed.requests = {r.plan.requests[1], r.plan.requests[0]};
  EXPECT_FALSE(std::holds_alternative<PlanValid>(validatePlan(doc.instance, reversed, doc.queries[0])));
}

TEST(GroupPhase, SingleCandidate) {
  auto doc = parseOrThrow(R"(
attr a scope { x }
group G
role ar
rules {
  rule canAssign : ar , true -> G
}
query relaxed { e_a(u) = { } }
)");
  PlanResult r = groupPhase(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "assign(ar,G)");
}

TEST(GroupPhase, MutualNegationIsDiscarded) {
  auto doc = parseOrThrow(R"(
attr a scope { x }
group A
group B
role ar
rules {
  rule canAssign : ar , not(B in directUg) -> A
  rule canAssign : ar , not(A in directUg) -> B
}
query relaxed { e_a(u) = { } }
)");
  PlanResult r = groupPhase(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_TRUE(r.plan.empty());
  EXPECT_EQ(r.discardedGroups, (std::vector<GroupId>{grp("A"), grp("B")}));
  // No ordering holds both groups at once.
  auto all = enumerateReachable(doc.instance);
  ASSERT_TRUE(all.complete());
  for (const auto& [key, depth] : all.depth) {
    EXPECT_LT(decodeState(key).userGroups().size(), 2u);
  }
}

TEST(GroupPhase, StrictSkipsGroupsCarryingForeignValues) {
  auto doc = parseOrThrow(R"(
attr a scope { x, y }
group A
group B
role ar
groupstate B {
  a = { y }
}
rules {
  rule canAssign : ar , true -> A
  rule canAssign : ar , true -> B
}
query strict { e_a(u) = { x } }
)");
  PlanResult r = groupPhase(doc.instance, doc.queries[0]);
  EXPECT_EQ(render(r.plan), "assign(ar,A)");
}

TEST(GroupPhase, RequiresSingleRuleDirect) {
  auto doc = fixture("bob.gurag");
  EXPECT_THROW(groupPhase(doc.instance, doc.queries[0]), RestrictionViolation);
}

// Attribute phase.
TEST(AttrPhase, ChainNeedsTwoSteps) {
  auto doc = fixture("chain.gurag");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "addU(ar,att,v1); addU(ar,att,v2)");
  SearchOutcome o = bfsSolve(doc.instance, doc.queries[0]);
  EXPECT_EQ(o.plan.size(), 2u);
}

TEST(AttrPhase, NegativeConjunctPresent) {
  auto doc = parseOrThrow(R"(
attr att scope { v2, v3 }
role ar
user {
  att = { v3 }
}
rules {
  rule canAddU att : ar , not(v3 in direct(att)) -> v2
}
query relaxed { e_att(u) = { v2 } }
)");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kNegativeConjunctPresent);
  EXPECT_FALSE(oracleReachable(doc, 0));
}

TEST(AttrPhase, ForbiddenIncomingEdge) {
  auto doc = parseOrThrow(R"(
attr att scope { v1, v2 }
role ar
rules {
  rule canAddU att : ar , true -> v1
  rule canAddU att : ar , v1 in direct(att) -> v2
}
query strict { e_att(u) = { v2 } }
query relaxed { e_att(u) = { v2 } }
)");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kForbiddenIncomingEdge);
  EXPECT_FALSE(oracleReachable(doc, 0));
  EXPECT_TRUE(attrPhase(doc.instance, doc.instance.initial, doc.queries[1]).reachable);
  EXPECT_TRUE(oracleReachable(doc, 1));
}

TEST(AttrPhase, MissingRule) {
  auto doc = parseOrThrow(R"(
attr att scope { v1, v2 }
role ar
rules {
  rule canAddU att : ar , v1 in direct(att) -> v2
}
query relaxed { e_att(u) = { v2 } }
)");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kMissingRule);
}

TEST(AttrPhase, CycleInValset) {
  auto doc = parseOrThrow(R"(
attr att scope { v1, v2 }
role ar
rules {
  rule canAddU att : ar , v2 in direct(att) -> v1
  rule canAddU att : ar , v1 in direct(att) -> v2
}
query strict { e_att(u) = { v1, v2 } }
)");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kCycleInValset);
  EXPECT_FALSE(oracleReachable(doc, 0));
}

TEST(AttrPhase, SelfNegationIsNotACycle) {
  auto doc = parseOrThrow(R"(
attr att scope { v }
role ar
rules {
  rule canAddU att : ar , not(v in direct(att)) -> v
}
query strict { e_att(u) = { v } }
)");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "addU(ar,att,v)");
}

TEST(AttrPhase, GroupScopedValuesGoToSmallestWorkingGroup) {
  auto doc = parseOrThrow(R"(
attr a scope { p, q }
group A
group B
role ar
user {
  groups = { A, B }
}
groupstate B {
  a = { p }
}
rules {
  rule canAddUG a : ar , p in direct(a) -> q
}
query relaxed { e_a(u) = { q } }
)");
  PlanResult r = attrPhase(doc.instance, doc.instance.initial, doc.queries[0]);
  ASSERT_TRUE(r.reachable) << r.detail;
  EXPECT_EQ(render(r.plan), "addUG(ar,B,a,q)");
}

// Composition.
constexpr const char* kComposed = R"(
attr a scope { p, q }
group G
role ar
groupstate G {
  a = { p }
}
rules {
  rule canAssign : ar , true -> G
  rule canAddU a : ar , true -> q
}
query strict { e_a(u) = { p, q } }
query strict { e_a(u) = { } }
)";

TEST(SolveSRdNoDelete, GroupThenAttributes) {
  auto doc = parseOrThrow(kComposed);
  PlanResult r = solveSRdNoDelete(doc.instance, doc.queries[0]);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(render(r.plan), "assign(ar,G); addU(ar,a,q)");
  EXPECT_TRUE(isValid(validatePlan(doc.instance, r.plan, doc.queries[0])));
  EXPECT_TRUE(oracleReachable(doc, 0));
}

TEST(SolveSRdNoDelete, AlreadySatisfied) {
  auto doc = parseOrThrow(kComposed);
  PlanResult r = solveSRdNoDelete(doc.instance, doc.queries[1]);
  ASSERT_TRUE(r.reachable);
  EXPECT_TRUE(r.plan.empty());
}

TEST(SolveSRdNoDelete, G1LevelMatchesAttrPhase) {
  auto doc = fixture("chain.gurag");
  for (const auto& q : doc.queries) {
    PlanResult a = solveSRdNoDelete(doc.instance, q);
    PlanResult b = attrPhase(doc.instance, doc.instance.initial, q);
    EXPECT_EQ(a.reachable, b.reachable);
    EXPECT_EQ(a.plan, b.plan);
    EXPECT_EQ(a.reason, b.reason);
  }
}

TEST(SolveSRdNoDelete, StrictSurplusChain) {
  auto doc = fixture("chain.gurag");
  PlanResult r = solveSRdNoDelete(doc.instance, doc.queries[2]);
  EXPECT_FALSE(r.reachable);
  EXPECT_EQ(r.reason, UnreachableReason::kExtraValuesPresent);
}

TEST(SolveSRdNoDelete, RejectsEffectiveConjuncts) {
  auto doc = fixture("bob.gurag");
  EXPECT_THROW(solveSRdNoDelete(doc.instance, doc.queries[0]), RestrictionViolation);
}

// Randomised cross-checks against the exhaustive oracle.
void crossCheck(FuzzClass c, std::uint64_t seed, std::size_t count, bool acyclicOnly) {
  SearchBounds bounds{FuzzShape::kOracleDepth, FuzzShape::kOracleStates, 60000};
  std::size_t compared = 0;
  for (std::size_t i = 0; i < count; ++i) {
    FuzzCase fc = generateCase(c, seed, i);
    if (acyclicOnly && !orderingGraphsAcyclic(fc.instance.rules)) continue;
    for (const auto& q : fc.queries) {
      PlanResult r = c == FuzzClass::kNonNeg ? solveNoNegation(fc.instance, q)
                                             : solveSRdNoDelete(fc.instance, q);
      SearchOutcome o = bfsSolve(fc.instance, q, bounds);
      ASSERT_NE(o.kind, SearchOutcome::Kind::kBoundExceeded);
      ASSERT_EQ(r.reachable, o.reachable())
          << "case " << i << "\n" << serializeInstance(fc.instance, {q});
      if (!r.reachable) continue;
      ASSERT_TRUE(isValid(validatePlan(fc.instance, r.plan, q)));
      if (q.type == QueryType::kStrict) {
        ReachabilityQuery relaxed = q;
        relaxed.type = QueryType::kRelaxed;
        EXPECT_TRUE(isValid(validatePlan(fc.instance, r.plan, relaxed)));
        PlanResult rr = c == FuzzClass::kNonNeg ? solveNoNegation(fc.instance, relaxed)
                                                : solveSRdNoDelete(fc.instance, relaxed);
        EXPECT_TRUE(rr.reachable);
      }
      ++compared;
    }
  }
  EXPECT_GE(compared, count / 2);
}

TEST(OracleAgreement, NoNegation) { crossCheck(FuzzClass::kNonNeg, 101, 150, false); }

TEST(OracleAgreement, SingleRuleDirectAcyclic) { crossCheck(FuzzClass::kSrd, 202, 250, true); }

}  // namespace
}  // namespace gurag
