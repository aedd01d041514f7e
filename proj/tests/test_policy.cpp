#include <gtest/gtest.h>

#include <random>

#include "gurag/policy.hpp"
#include "support.hpp"

namespace gurag {
namespace {

using namespace gurag::testing;
using P = Precondition;

TEST(EvalPrecondition, BobDirectSkill) {
  auto doc = fixture("bob.gurag");
  EXPECT_TRUE(evalPrecondition(P::directValue(att("skills"), val("c")), doc.instance.initial,
                               doc.instance.hierarchy, Subject::user()));
}

TEST(EvalPrecondition, BobEffectiveRoomAccess) {
  auto doc = fixture("bob.gurag");
  const auto& p = doc.instance;
  EXPECT_TRUE(evalPrecondition(P::effectiveValue(att("roomAcc"), val("3.02")), p.initial,
                               p.hierarchy, Subject::user()));
  EXPECT_FALSE(evalPrecondition(P::directValue(att("roomAcc"), val("3.02")), p.initial,
                                p.hierarchy, Subject::user()));
}

TEST(EvalPrecondition, NestedNegation) {
  DirectState s;
  s.addUserValue(att("a"), val("x"));
  P pre = P::negate(P::conj(P::directValue(att("a"), val("x")),
                            P::negate(P::directValue(att("a"), val("y")))));
  EXPECT_FALSE(evalPrecondition(pre, s, GroupHierarchy{}, Subject::user()));
}

TEST(EvalPrecondition, GroupSubjectUsesGroupValues) {
  GroupHierarchy h(grps({"A", "B"}), {{grp("A"), grp("B")}});
  DirectState s;
  s.addGroupValue(grp("B"), att("a"), val("x"));
  EXPECT_TRUE(evalPrecondition(P::effectiveValue(att("a"), val("x")), s, h,
                               Subject::ofGroup(grp("A"))));
  EXPECT_FALSE(evalPrecondition(P::directValue(att("a"), val("x")), s, h,
                                Subject::ofGroup(grp("A"))));
}

TEST(EvalPrecondition, GroupLiteralOnGroupSubjectIsContractViolation) {
  GroupHierarchy h(grps({"A"}), {});
  EXPECT_THROW(evalPrecondition(P::directGroup(grp("A")), DirectState{}, h,
                                Subject::ofGroup(grp("A"))),
               ContractViolation);
}

TEST(EvalPrecondition, TrueAlwaysHolds) {
  EXPECT_TRUE(evalPrecondition(P::always(), DirectState{}, GroupHierarchy{}, Subject::user()));
}

RuleSet skillsOnly() {
  RuleSet rs;
  rs.addValueRule(Relation::kCanAddU, role("ar"), P::directValue(att("skills"), val("c")),
                  att("skills"), val("java"));
  return rs;
}

TEST(ClassifyInstanceLevel, SameAttributeIsG0) {
  EXPECT_EQ(classifyInstanceLevel(skillsOnly()), SchemeLevel::kG0);
}

TEST(ClassifyInstanceLevel, CrossAttributeIsG1) {
  RuleSet rs = skillsOnly();
  rs.addValueRule(Relation::kCanAddU, role("ar"), P::directValue(att("skills"), val("java")),
                  att("roomAcc"), val("2.01"));
  EXPECT_EQ(classifyInstanceLevel(rs), SchemeLevel::kG1);
}

TEST(ClassifyInstanceLevel, AnyAssignIsG1Plus) {
  RuleSet rs = skillsOnly();
  rs.addMembershipRule(Relation::kCanAssign, role("ar"), P::always(), grp("G1"));
  EXPECT_EQ(classifyInstanceLevel(rs), SchemeLevel::kG1Plus);
}

TEST(CheckRestrictions, EffectiveConjunctsWithDeletes) {
  RuleSet rs;
  rs.addValueRule(Relation::kCanAddU, role("ar"), P::effectiveValue(att("a"), val("x")),
                  att("a"), val("y"));
  rs.addValueRule(Relation::kCanDeleteU, role("ar"), P::always(), att("a"), val("x"));
  RestrictionFlags f = checkRestrictions(rs);
  EXPECT_TRUE(f.noNegation);
  EXPECT_FALSE(f.noDeletion);
  EXPECT_FALSE(f.singleRuleDirect);
}

TEST(CheckRestrictions, DuplicateAddRuleBreaksSingleRule) {
  RuleSet rs = skillsOnly();
  rs.addValueRule(Relation::kCanAddU, role("ar2"), P::always(), att("skills"), val("java"));
  EXPECT_FALSE(checkRestrictions(rs).singleRuleDirect);
}

TEST(CheckRestrictions, SameValueAcrossUserAndGroupRules) {
  RuleSet rs = skillsOnly();
  rs.addValueRule(Relation::kCanAddUG, role("ar"), P::always(), att("skills"), val("java"));
  EXPECT_FALSE(checkRestrictions(rs).singleRuleDirect);
}

TEST(CheckRestrictions, NegatedDirectLiteralWithoutDeletes) {
  RuleSet rs;
  rs.addValueRule(Relation::kCanAddU, role("ar"), P::negate(P::directValue(att("a"), val("x"))),
                  att("a"), val("y"));
  RestrictionFlags f = checkRestrictions(rs);
  EXPECT_FALSE(f.noNegation);
  EXPECT_TRUE(f.noDeletion);
  EXPECT_TRUE(f.singleRuleDirect);
}

// Random formulas over two attributes and three values.
class FormulaGen {
 public:
  explicit FormulaGen(unsigned seed) : rng_(seed) {}

  P literal() {
    AttributeName a = rng_() % 2 ? att("a") : att("b");
    AtomicValue v = val(kValues[rng_() % 3]);
    return rng_() % 2 ? P::directValue(a, v) : P::effectiveValue(a, v);
  }

  P formula(int depth, bool allowNot) {
    if (depth == 0 || rng_() % 3 == 0) return literal();
    if (allowNot && rng_() % 3 == 0) return P::negate(formula(depth - 1, allowNot));
    return P::conj(formula(depth - 1, allowNot), formula(depth - 1, allowNot));
  }

  DirectState state(const GroupHierarchy& h) {
    DirectState s;
    for (const char* a : {"a", "b"}) {
      for (const char* v : kValues) {
        if (rng_() % 2) s.addUserValue(att(a), val(v));
        for (const auto& g : h.groups()) {
          if (rng_() % 4 == 0) s.addGroupValue(g, att(a), val(v));
        }
      }
    }
    for (const auto& g : h.groups()) {
      if (rng_() % 2) s.assignGroup(g);
    }
    return s;
  }

  std::mt19937& rng() { return rng_; }

 private:
  static constexpr const char* kValues[] = {"x", "y", "z"};
  std::mt19937 rng_;
};

TEST(EvalPrecondition, ConjunctionIsAssociativeAndCommutative) {
  FormulaGen gen(7);
  GroupHierarchy h(grps({"G", "J"}), {{grp("G"), grp("J")}});
  for (int i = 0; i < 500; ++i) {
    P x = gen.formula(2, true);
    P y = gen.formula(2, true);
    P z = gen.formula(2, true);
    DirectState s = gen.state(h);
    auto eval = [&](const P& p) { return evalPrecondition(p, s, h, Subject::user()); };
    EXPECT_EQ(eval(P::conj(P::conj(x, y), z)), eval(P::conj(x, P::conj(y, z))));
    EXPECT_EQ(eval(P::conj(x, y)), eval(P::conj(y, x)));
  }
}

TEST(EvalPrecondition, NegationFreeIsMonotone) {
  FormulaGen gen(11);
  GroupHierarchy h(grps({"G", "J"}), {{grp("G"), grp("J")}});
  for (int i = 0; i < 500; ++i) {
    P pre = gen.formula(3, false);
    DirectState small = gen.state(h);
    DirectState big = small;
    DirectState extra = gen.state(h);
    for (const auto& [a, vs] : extra.userAttrs()) {
      for (const auto& v : vs) big.addUserValue(a, v);
    }
    for (const auto& [g, attrs] : extra.groupAttrs()) {
      for (const auto& [a, vs] : attrs) {
        for (const auto& v : vs) big.addGroupValue(g, a, v);
      }
    }
    for (const auto& g : extra.userGroups()) big.assignGroup(g);
    ASSERT_TRUE(small.pointwiseSubsetOf(big));
    if (evalPrecondition(pre, small, h, Subject::user())) {
      EXPECT_TRUE(evalPrecondition(pre, big, h, Subject::user()));
    }
  }
}

TEST(ClassifyInstanceLevel, LevelsNest) {
  FormulaGen gen(3);
  for (int i = 0; i < 200; ++i) {
    RuleSet rs;
    int n = 1 + gen.rng()() % 4;
    for (int k = 0; k < n; ++k) {
      rs.addValueRule(Relation::kCanAddU, role("ar"), gen.formula(2, true),
                      gen.rng()() % 2 ? att("a") : att("b"), val("x"));
    }
    SchemeLevel before = classifyInstanceLevel(rs);
    rs.addMembershipRule(Relation::kCanAssign, role("ar"), P::always(), grp("G"));
    EXPECT_EQ(classifyInstanceLevel(rs), SchemeLevel::kG1Plus);
    EXPECT_NE(before, SchemeLevel::kG1Plus);
  }
}

}  // namespace
}  // namespace gurag
