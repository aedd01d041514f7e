#pragma once

// Administrative roles, the precondition language, the six administrative
// relations and the scheme-level / restriction classifiers.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gurag/model.hpp"

namespace gurag {

/// Immutable precondition formula. Nodes are shared; copying is cheap.
class Precondition {
 public:
  enum class Kind { kTrue, kNot, kAnd, kDirectVal, kEffVal, kDirectGroup, kEffGroup };

  Precondition();  // True

  static Precondition always();
  static Precondition negate(Precondition child);
  /// Conjunction, re-associated so that And nodes are always right-nested.
  static Precondition conj(Precondition left, Precondition right);
  static Precondition conj(const std::vector<Precondition>& parts);
  static Precondition directValue(AttributeName att, AtomicValue val);
  static Precondition effectiveValue(AttributeName att, AtomicValue val);
  static Precondition directGroup(GroupId g);
  static Precondition effectiveGroup(GroupId g);

  Kind kind() const noexcept;
  const Precondition& child() const;  // kNot
  const Precondition& left() const;   // kAnd
  const Precondition& right() const;  // kAnd
  const AttributeName& attribute() const;
  const AtomicValue& value() const;
  const GroupId& group() const;

  bool isLiteral() const noexcept;
  bool isGroupLiteral() const noexcept {
    return kind() == Kind::kDirectGroup || kind() == Kind::kEffGroup;
  }

  /// Flattened conjuncts (a non-And formula yields itself).
  std::vector<Precondition> conjuncts() const;

  friend bool operator==(const Precondition& a, const Precondition& b);

 private:
  struct Node;
  explicit Precondition(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

enum class Relation { kCanAddU, kCanDeleteU, kCanAddUG, kCanDeleteUG, kCanAssign, kCanRemove };

std::string_view relationName(Relation r);
std::optional<Relation> parseRelation(std::string_view name);
bool isValueRelation(Relation r);
bool isMembershipRelation(Relation r);
bool isDeletion(Relation r);
/// canAddUG / canDeleteUG: the precondition subject is the target group.
bool isGroupSubjectRelation(Relation r);

/// A tuple of an administrative relation. Value relations use attr/value,
/// membership relations use group.
struct Rule {
  std::size_t id = 0;
  Relation relation = Relation::kCanAddU;
  AdminRole role;
  Precondition pre;
  AttributeName attr;
  AtomicValue value;
  GroupId group;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Tie-break key used by every algorithm: (relation, attr, value or group, id).
bool ruleOrderLess(const Rule& a, const Rule& b);

/// Psi. Rule ids are dense and follow insertion order.
class RuleSet {
 public:
  const Rule& addValueRule(Relation relation, AdminRole role, Precondition pre,
                           AttributeName attr, AtomicValue value);
  const Rule& addMembershipRule(Relation relation, AdminRole role,
                                Precondition pre, GroupId group);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  const Rule& at(std::size_t id) const { return rules_.at(id); }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }

  std::vector<const Rule*> ofRelation(Relation r) const;
  /// Rules sorted by ruleOrderLess.
  std::vector<const Rule*> ordered() const;

  friend bool operator==(const RuleSet&, const RuleSet&) = default;

 private:
  std::vector<Rule> rules_;
};

/// Who a precondition is evaluated against.
class Subject {
 public:
  static Subject user() { return Subject(std::nullopt); }
  static Subject ofGroup(GroupId g) { return Subject(std::move(g)); }
  bool isUser() const noexcept { return !group_.has_value(); }
  const GroupId& group() const { return group_.value(); }

 private:
  explicit Subject(std::optional<GroupId> g) : group_(std::move(g)) {}
  std::optional<GroupId> group_;
};

bool evalPrecondition(const Precondition& pre, const EffectiveView& view,
                      const Subject& subject);
bool evalPrecondition(const Precondition& pre, const DirectState& state,
                      const GroupHierarchy& h, const Subject& subject);

enum class SchemeLevel { kG0, kG1, kG1Plus };

std::string_view schemeLevelName(SchemeLevel level);
std::optional<SchemeLevel> parseSchemeLevel(std::string_view name);

struct RestrictionFlags {
  bool noNegation = true;
  bool noDeletion = true;
  bool singleRuleDirect = true;
  SchemeLevel instanceLevel = SchemeLevel::kG0;

  friend bool operator==(const RestrictionFlags&, const RestrictionFlags&) = default;
};

SchemeLevel classifyInstanceLevel(const RuleSet& rules);
RestrictionFlags checkRestrictions(const RuleSet& rules);

/// Visits every literal (DirectVal/EffVal/DirectGroup/EffGroup) with its
/// polarity (true = positive).
template <typename Fn>
void forEachLiteral(const Precondition& pre, Fn&& fn, bool positive = true) {
  switch (pre.kind()) {
    case Precondition::Kind::kTrue:
      return;
    case Precondition::Kind::kNot:
      forEachLiteral(pre.child(), fn, !positive);
      return;
    case Precondition::Kind::kAnd:
      forEachLiteral(pre.left(), fn, positive);
      forEachLiteral(pre.right(), fn, positive);
      return;
    default:
      fn(pre, positive);
  }
}

}  // namespace gurag
