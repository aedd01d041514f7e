#include "gurag/model.hpp"

#include <algorithm>

namespace gurag {

namespace {

const ValueSet& emptyValues() {
  static const ValueSet kEmpty;
  return kEmpty;
}

const GroupSet& emptyGroups() {
  static const GroupSet kEmpty;
  return kEmpty;
}

}  // namespace

bool isSubset(const ValueSet& sub, const ValueSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// --- GroupHierarchy ---------------------------------------------------------

GroupHierarchy::GroupHierarchy(GroupSet groups,
                               std::set<SeniorityEdge> seniority)
    : groups_(std::move(groups)) {
  for (const auto& [senior, junior] : seniority) {
    if (senior == junior) continue;  // reflexive pairs are implicit
    edges_.insert({senior, junior});
    juniors_[senior].insert(junior);
  }
  // Closure by DFS from every group; well defined even on cyclic input.
  for (const auto& g : groups_) {
    GroupSet seen{g};
    std::vector<GroupId> stack{g};
    while (!stack.empty()) {
      GroupId cur = stack.back();
      stack.pop_back();
      auto it = juniors_.find(cur);
      if (it == juniors_.end()) continue;
      for (const auto& j : it->second) {
        if (groups_.contains(j) && seen.insert(j).second) stack.push_back(j);
      }
    }
    closure_.emplace(g, std::move(seen));
  }
}

const GroupSet& GroupHierarchy::directJuniors(const GroupId& g) const {
  auto it = juniors_.find(g);
  return it == juniors_.end() ? emptyGroups() : it->second;
}

const GroupSet& GroupHierarchy::juniorClosure(const GroupId& g) const {
  auto it = closure_.find(g);
  if (it == closure_.end()) {
    throw InputError("unknown group '" + g.str() + "'");
  }
  return it->second;
}

std::optional<std::vector<GroupId>> GroupHierarchy::findCycle() const {
  enum class Mark { kNone, kActive, kDone };
  std::map<GroupId, Mark> mark;
  std::vector<GroupId> path;
  std::optional<std::vector<GroupId>> found;

  std::function<void(const GroupId&)> visit = [&](const GroupId& g) {
    mark[g] = Mark::kActive;
    path.push_back(g);
    for (const auto& j : directJuniors(g)) {
      if (found) break;
      Mark m = mark.contains(j) ? mark[j] : Mark::kNone;
      if (m == Mark::kActive) {
        auto start = std::find(path.begin(), path.end(), j);
        found = std::vector<GroupId>(start, path.end());
      } else if (m == Mark::kNone) {
        visit(j);
      }
    }
    path.pop_back();
    mark[g] = Mark::kDone;
  };

  std::set<GroupId> roots = groups_;
  for (const auto& [s, j] : edges_) {
    roots.insert(s);
    roots.insert(j);
  }
  for (const auto& g : roots) {
    if (found) break;
    if (!mark.contains(g)) visit(g);
  }
  return found;
}

std::vector<SeniorityEdge> GroupHierarchy::danglingEdges() const {
  std::vector<SeniorityEdge> out;
  for (const auto& e : edges_) {
    if (!groups_.contains(e.first) || !groups_.contains(e.second)) {
      out.push_back(e);
    }
  }
  return out;
}

// --- DirectState ------------------------------------------------------------

const ValueSet& DirectState::userValues(const AttributeName& att) const {
  auto it = userAttrs_.find(att);
  return it == userAttrs_.end() ? emptyValues() : it->second;
}

const ValueSet& DirectState::groupValues(const GroupId& g,
                                         const AttributeName& att) const {
  auto git = groupAttrs_.find(g);
  if (git == groupAttrs_.end()) return emptyValues();
  auto it = git->second.find(att);
  return it == git->second.end() ? emptyValues() : it->second;
}

namespace {

bool eraseValue(AttributeValues& values, const AttributeName& att,
                const AtomicValue& val) {
  auto it = values.find(att);
  if (it == values.end() || it->second.erase(val) == 0) return false;
  if (it->second.empty()) values.erase(it);
  return true;
}

}  // namespace

bool DirectState::addUserValue(const AttributeName& att,
                               const AtomicValue& val) {
  return userAttrs_[att].insert(val).second;
}

bool DirectState::removeUserValue(const AttributeName& att,
                                  const AtomicValue& val) {
  return eraseValue(userAttrs_, att, val);
}

bool DirectState::addGroupValue(const GroupId& g, const AttributeName& att,
                                const AtomicValue& val) {
  return groupAttrs_[g][att].insert(val).second;
}

bool DirectState::removeGroupValue(const GroupId& g, const AttributeName& att,
                                   const AtomicValue& val) {
  auto git = groupAttrs_.find(g);
  if (git == groupAttrs_.end()) return false;
  bool changed = eraseValue(git->second, att, val);
  if (git->second.empty()) groupAttrs_.erase(git);
  return changed;
}

bool DirectState::assignGroup(const GroupId& g) {
  return userGroups_.insert(g).second;
}

bool DirectState::removeGroup(const GroupId& g) {
  return userGroups_.erase(g) > 0;
}

bool DirectState::pointwiseSubsetOf(const DirectState& other) const {
  for (const auto& [att, vals] : userAttrs_) {
    if (!isSubset(vals, other.userValues(att))) return false;
  }
  for (const auto& [g, attrs] : groupAttrs_) {
    for (const auto& [att, vals] : attrs) {
      if (!isSubset(vals, other.groupValues(g, att))) return false;
    }
  }
  return std::includes(other.userGroups_.begin(), other.userGroups_.end(),
                       userGroups_.begin(), userGroups_.end());
}

std::size_t DirectState::factCount() const {
  std::size_t n = userGroups_.size();
  for (const auto& [att, vals] : userAttrs_) n += vals.size();
  for (const auto& [g, attrs] : groupAttrs_) {
    for (const auto& [att, vals] : attrs) n += vals.size();
  }
  return n;
}

// --- Effective computations -------------------------------------------------

GroupSet EffectiveView::effectiveGroups() const {
  GroupSet out;
  for (const auto& g : state_.userGroups()) {
    const auto& closure = hierarchy_.juniorClosure(g);
    out.insert(closure.begin(), closure.end());
  }
  return out;
}

const ValueSet& EffectiveView::groupValues(const GroupId& g,
                                           const AttributeName& att) const {
  auto key = std::make_pair(g, att);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (!hierarchy_.contains(g)) {
    throw InputError("unknown group '" + g.str() + "'");
  }
  // att(g) plus the effective values of every direct junior; minimal groups
  // fall out as the base case. inProgress_ only guards malformed (cyclic)
  // hierarchies against unbounded recursion.
  inProgress_.insert(key);
  ValueSet values = state_.groupValues(g, att);
  for (const auto& junior : hierarchy_.directJuniors(g)) {
    if (!hierarchy_.contains(junior)) continue;
    if (inProgress_.contains({junior, att})) continue;
    const auto& sub = groupValues(junior, att);
    values.insert(sub.begin(), sub.end());
  }
  inProgress_.erase(key);
  return cache_.emplace(key, std::move(values)).first->second;
}

ValueSet EffectiveView::userValues(const AttributeName& att) const {
  ValueSet values = state_.userValues(att);
  for (const auto& g : state_.userGroups()) {
    const auto& sub = groupValues(g, att);
    values.insert(sub.begin(), sub.end());
  }
  return values;
}

GroupSet juniorClosure(const GroupHierarchy& h, const GroupId& g) {
  return h.juniorClosure(g);
}

GroupSet effectiveGroups(const DirectState& s, const GroupHierarchy& h) {
  return EffectiveView(s, h).effectiveGroups();
}

ValueSet effectiveGroupAttr(const DirectState& s, const GroupHierarchy& h,
                            const GroupId& g, const AttributeName& att) {
  return EffectiveView(s, h).groupValues(g, att);
}

ValueSet effectiveUserAttr(const DirectState& s, const GroupHierarchy& h,
                           const AttributeName& att) {
  return EffectiveView(s, h).userValues(att);
}

namespace {

void requireAttribute(const ScopeTable& scopes, const AttributeName& att) {
  if (!scopes.contains(att)) {
    throw InputError("unknown attribute '" + att.str() + "'");
  }
}

}  // namespace

ValueSet effectiveGroupAttr(const ScopeTable& scopes, const DirectState& s,
                            const GroupHierarchy& h, const GroupId& g,
                            const AttributeName& att) {
  requireAttribute(scopes, att);
  return effectiveGroupAttr(s, h, g, att);
}

ValueSet effectiveUserAttr(const ScopeTable& scopes, const DirectState& s,
                           const GroupHierarchy& h, const AttributeName& att) {
  requireAttribute(scopes, att);
  return effectiveUserAttr(s, h, att);
}

}  // namespace gurag
