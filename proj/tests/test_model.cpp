#include <gtest/gtest.h>

#include <random>

#include "gurag/instance.hpp"
#include "gurag/model.hpp"
#include "support.hpp"

namespace gurag {
namespace {

using namespace gurag::testing;

GroupHierarchy bobHierarchy() {
  return GroupHierarchy(grps({"G1", "G2", "G3"}),
                        {{grp("G1"), grp("G2")}, {grp("G1"), grp("G3")}});
}

DirectState bobState() {
  DirectState s;
  s.addUserValue(att("roomAcc"), val("1.2"));
  s.addUserValue(att("skills"), val("c"));
  s.addUserValue(att("skills"), val("java"));
  s.assignGroup(grp("G1"));
  s.addGroupValue(grp("G2"), att("roomAcc"), val("3.02"));
  s.addGroupValue(grp("G3"), att("roomAcc"), val("2.03"));
  s.addGroupValue(grp("G3"), att("roomAcc"), val("2.04"));
  return s;
}

TEST(JuniorClosure, SeniorReachesBothJuniors) {
  EXPECT_EQ(juniorClosure(bobHierarchy(), grp("G1")), grps({"G1", "G2", "G3"}));
}

TEST(JuniorClosure, MinimalGroupIsReflexiveOnly) {
  EXPECT_EQ(juniorClosure(bobHierarchy(), grp("G2")), grps({"G2"}));
}

TEST(JuniorClosure, Transitive) {
  GroupHierarchy h(grps({"A", "B", "C"}), {{grp("A"), grp("B")}, {grp("B"), grp("C")}});
  EXPECT_EQ(juniorClosure(h, grp("A")), grps({"A", "B", "C"}));
}

TEST(JuniorClosure, UnknownGroupIsInputError) {
  EXPECT_THROW(juniorClosure(bobHierarchy(), grp("G9")), InputError);
}

TEST(EffectiveGroups, BobHoldsAllThree) {
  EXPECT_EQ(effectiveGroups(bobState(), bobHierarchy()), grps({"G1", "G2", "G3"}));
}

TEST(EffectiveGroups, NoMemberships) {
  EXPECT_TRUE(effectiveGroups(DirectState{}, bobHierarchy()).empty());
}

TEST(EffectiveGroups, TwoMinimalGroups) {
  DirectState s;
  s.assignGroup(grp("G2"));
  s.assignGroup(grp("G3"));
  EXPECT_EQ(effectiveGroups(s, bobHierarchy()), grps({"G2", "G3"}));
}

TEST(EffectiveGroupAttr, JuniorKeepsItsOwnValues) {
  EXPECT_EQ(effectiveGroupAttr(bobState(), bobHierarchy(), grp("G2"), att("roomAcc")),
            vals({"3.02"}));
}

TEST(EffectiveGroupAttr, SeniorInheritsFromJuniors) {
  EXPECT_EQ(effectiveGroupAttr(bobState(), bobHierarchy(), grp("G1"), att("roomAcc")),
            vals({"2.03", "2.04", "3.02"}));
}

TEST(EffectiveGroupAttr, EmptyBaseCase) {
  GroupHierarchy h(grps({"Solo"}), {});
  EXPECT_TRUE(effectiveGroupAttr(DirectState{}, h, grp("Solo"), att("a")).empty());
}

TEST(EffectiveGroupAttr, UnknownAttributeIsInputErrorWhenScoped) {
  ScopeTable scopes{{att("roomAcc"), vals({"1.2"})}};
  EXPECT_THROW(effectiveGroupAttr(scopes, bobState(), bobHierarchy(), grp("G1"), att("nope")),
               InputError);
}

TEST(EffectiveUserAttr, BobRoomAccess) {
  EXPECT_EQ(effectiveUserAttr(bobState(), bobHierarchy(), att("roomAcc")),
            vals({"1.2", "2.03", "2.04", "3.02"}));
}

TEST(EffectiveUserAttr, SkillsThroughGroupAndJunior) {
  GroupHierarchy h(grps({"ug", "ug2"}), {{grp("ug"), grp("ug2")}});
  DirectState s;
  s.assignGroup(grp("ug"));
  s.addGroupValue(grp("ug"), att("skills"), val("c"));
  s.addGroupValue(grp("ug"), att("skills"), val("java"));
  s.addGroupValue(grp("ug2"), att("skills"), val("c++"));
  EXPECT_EQ(effectiveUserAttr(s, h, att("skills")), vals({"c", "c++", "java"}));
}

TEST(EffectiveUserAttr, NoGroupsMeansDirectOnly) {
  DirectState s;
  s.addUserValue(att("a"), val("x"));
  EXPECT_EQ(effectiveUserAttr(s, GroupHierarchy{}, att("a")), vals({"x"}));
}

TEST(EffectiveUserAttr, NumericLookingTokensStayDistinct) {
  DirectState s;
  s.addUserValue(att("roomAcc"), val("1.2"));
  s.addUserValue(att("roomAcc"), val("1.20"));
  EXPECT_EQ(effectiveUserAttr(s, GroupHierarchy{}, att("roomAcc")).size(), 2u);
}

TEST(DirectState, EmptySetEqualsAbsentEntry) {
  DirectState a;
  DirectState b;
  b.addUserValue(att("a"), val("x"));
  b.removeUserValue(att("a"), val("x"));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(b.userAttrs().empty());
}

TEST(ValidateInstance, BobFixtureIsClean) {
  EXPECT_TRUE(validateInstance(fixture("bob.gurag").instance).empty());
}

TEST(ValidateInstance, HierarchyCycle) {
  ProblemInstance p;
  p.hierarchy = GroupHierarchy(grps({"A", "B"}), {{grp("A"), grp("B")}, {grp("B"), grp("A")}});
  auto v = validateInstance(p);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().code, "hierarchy-cycle");
}

TEST(ValidateInstance, ValueOutsideScope) {
  ProblemInstance p;
  p.scopes[att("a")] = vals({"x"});
  p.initial.addUserValue(att("a"), val("y"));
  auto v = validateInstance(p);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().code, "scope-violation");
}

// Random DAGs of up to six groups: the memoised recursion against a naive
// fixpoint that keeps pushing junior values upward until nothing changes.
TEST(EffectiveGroupAttr, MatchesNaiveFixpoint) {
  std::mt19937 rng(20240611);
  const std::vector<const char*> names = {"g0", "g1", "g2", "g3", "g4", "g5"};
  const std::vector<const char*> values = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % names.size();
    GroupSet groups;
    for (std::size_t i = 0; i < n; ++i) groups.insert(grp(names[i]));
    std::set<SeniorityEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng() % 3 == 0) edges.insert({grp(names[i]), grp(names[j])});
      }
    }
    GroupHierarchy h(groups, edges);
    DirectState s;
    for (std::size_t i = 0; i < n; ++i) {
      for (const char* v : values) {
        if (rng() % 4 == 0) s.addGroupValue(grp(names[i]), att("k"), val(v));
      }
    }

    std::map<GroupId, ValueSet> naive;
    for (const auto& g : groups) naive[g] = s.groupValues(g, att("k"));
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [senior, junior] : edges) {
        for (const auto& v : naive[junior]) changed |= naive[senior].insert(v).second;
      }
    }
    for (const auto& g : groups) {
      ASSERT_EQ(effectiveGroupAttr(s, h, g, att("k")), naive[g]) << "trial " << trial;
      EXPECT_TRUE(juniorClosure(h, g).contains(g));
      for (const auto& j : juniorClosure(h, g)) {
        EXPECT_TRUE(isSubset(naive[j], naive[g]));
      }
    }
  }
}

}  // namespace
}  // namespace gurag
