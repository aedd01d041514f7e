#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gurag/model.hpp"
#include "gurag/policy.hpp"

namespace gurag {

/// A complete reachability problem: static model, rules and the initial
/// direct state of the analysed user.
struct ProblemInstance {
  ScopeTable scopes;
  GroupHierarchy hierarchy;
  std::set<AdminRole> roles;
  RuleSet rules;
  DirectState initial;
  std::optional<SchemeLevel> declaredLevel;

  const GroupSet& groups() const noexcept { return hierarchy.groups(); }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

struct Violation {
  std::string code;  // stable identifier, e.g. "hierarchy-cycle"
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff every cross reference resolves, values lie in scope and the
/// hierarchy is a partial order.
std::vector<Violation> validateInstance(const ProblemInstance& p);

/// Throws InputError carrying the first violation, if any.
void requireValid(const ProblemInstance& p);

}  // namespace gurag
