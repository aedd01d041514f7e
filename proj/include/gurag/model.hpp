#pragma once

// Static model (attributes, scopes, groups, hierarchy) and the dynamic
// direct state of the single analysed user, plus effective-attribute
// computation over the group hierarchy.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gurag/errors.hpp"

namespace gurag {

/// Opaque, case-sensitive token. Ordering is plain byte-lexicographic and is
/// the only ordering used for deterministic iteration.
template <typename Tag>
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string token) : token_(std::move(token)) {}

  const std::string& str() const noexcept { return token_; }
  bool empty() const noexcept { return token_.empty(); }

  friend auto operator<=>(const Identifier&, const Identifier&) = default;
  friend bool operator==(const Identifier&, const Identifier&) = default;

 private:
  std::string token_;
};

struct AttributeTag {};
struct ValueTag {};
struct GroupTag {};
struct RoleTag {};

using AttributeName = Identifier<AttributeTag>;
using AtomicValue = Identifier<ValueTag>;
using GroupId = Identifier<GroupTag>;
using AdminRole = Identifier<RoleTag>;

using ValueSet = std::set<AtomicValue>;
using AttributeValues = std::map<AttributeName, ValueSet>;
using ScopeTable = std::map<AttributeName, ValueSet>;
using GroupSet = std::set<GroupId>;
using SeniorityEdge = std::pair<GroupId, GroupId>;  // (senior, junior)

/// User-group hierarchy given as direct seniority edges. The reflexive and
/// transitive closure is computed eagerly. Construction never throws so that
/// malformed hierarchies can still be reported by validation; use
/// isPartialOrder() / findCycle() to check.
class GroupHierarchy {
 public:
  GroupHierarchy() = default;
  GroupHierarchy(GroupSet groups, std::set<SeniorityEdge> seniority);

  const GroupSet& groups() const noexcept { return groups_; }
  const std::set<SeniorityEdge>& seniority() const noexcept { return edges_; }
  bool contains(const GroupId& g) const { return groups_.contains(g); }

  /// Direct juniors of g (edges whose senior is g), sorted.
  const GroupSet& directJuniors(const GroupId& g) const;

  /// {g' | g >= g'}; always contains g. Throws InputError for unknown g.
  const GroupSet& juniorClosure(const GroupId& g) const;

  /// A cycle through two or more distinct groups, if one exists.
  std::optional<std::vector<GroupId>> findCycle() const;
  bool isPartialOrder() const { return !findCycle().has_value(); }

  /// Edges whose endpoints are not declared groups.
  std::vector<SeniorityEdge> danglingEdges() const;

  friend bool operator==(const GroupHierarchy& a, const GroupHierarchy& b) {
    return a.groups_ == b.groups_ && a.edges_ == b.edges_;
  }

 private:
  GroupSet groups_;
  std::set<SeniorityEdge> edges_;
  std::map<GroupId, GroupSet> juniors_;
  std::map<GroupId, GroupSet> closure_;
};

/// Direct state of the single user u: UAA (user values), UGAA (group values)
/// and UGA (direct memberships). Empty value sets are never stored, so an
/// absent entry and an empty set compare equal.
class DirectState {
 public:
  const ValueSet& userValues(const AttributeName& att) const;
  const ValueSet& groupValues(const GroupId& g, const AttributeName& att) const;
  const GroupSet& userGroups() const noexcept { return userGroups_; }

  const AttributeValues& userAttrs() const noexcept { return userAttrs_; }
  const std::map<GroupId, AttributeValues>& groupAttrs() const noexcept {
    return groupAttrs_;
  }

  // Each mutator returns whether the state changed.
  bool addUserValue(const AttributeName& att, const AtomicValue& val);
  bool removeUserValue(const AttributeName& att, const AtomicValue& val);
  bool addGroupValue(const GroupId& g, const AttributeName& att,
                     const AtomicValue& val);
  bool removeGroupValue(const GroupId& g, const AttributeName& att,
                        const AtomicValue& val);
  bool assignGroup(const GroupId& g);
  bool removeGroup(const GroupId& g);

  /// Every direct set of *this is a subset of the matching set in other.
  bool pointwiseSubsetOf(const DirectState& other) const;

  /// Total number of stored (entity, attribute, value) and membership facts.
  std::size_t factCount() const;

  friend bool operator==(const DirectState&, const DirectState&) = default;

 private:
  AttributeValues userAttrs_;
  std::map<GroupId, AttributeValues> groupAttrs_;
  GroupSet userGroups_;
};

/// Effective values over one state snapshot. Group results are memoised per
/// (group, attribute); the cache lives only as long as the view.
class EffectiveView {
 public:
  EffectiveView(const DirectState& state, const GroupHierarchy& hierarchy)
      : state_(state), hierarchy_(hierarchy) {}

  const DirectState& state() const noexcept { return state_; }
  const GroupHierarchy& hierarchy() const noexcept { return hierarchy_; }

  GroupSet effectiveGroups() const;
  const ValueSet& groupValues(const GroupId& g, const AttributeName& att) const;
  ValueSet userValues(const AttributeName& att) const;

 private:
  const DirectState& state_;
  const GroupHierarchy& hierarchy_;
  mutable std::map<std::pair<GroupId, AttributeName>, ValueSet> cache_;
  mutable std::set<std::pair<GroupId, AttributeName>> inProgress_;
};

GroupSet juniorClosure(const GroupHierarchy& h, const GroupId& g);
GroupSet effectiveGroups(const DirectState& s, const GroupHierarchy& h);
ValueSet effectiveGroupAttr(const DirectState& s, const GroupHierarchy& h,
                            const GroupId& g, const AttributeName& att);
ValueSet effectiveUserAttr(const DirectState& s, const GroupHierarchy& h,
                           const AttributeName& att);

/// Scope-checked variants: throw InputError on an attribute missing from
/// the scope table.
ValueSet effectiveGroupAttr(const ScopeTable& scopes, const DirectState& s,
                            const GroupHierarchy& h, const GroupId& g,
                            const AttributeName& att);
ValueSet effectiveUserAttr(const ScopeTable& scopes, const DirectState& s,
                           const GroupHierarchy& h, const AttributeName& att);

bool isSubset(const ValueSet& sub, const ValueSet& super);

}  // namespace gurag
