#include "gurag/instance.hpp"

namespace gurag {

namespace {

class Checker {
 public:
  explicit Checker(const ProblemInstance& p) : p_(p) {}

  std::vector<Violation> run() {
    checkScopes();
    checkHierarchy();
    checkState();
    checkRules();
    return std::move(out_);
  }

 private:
  void report(std::string code, std::string message) {
    out_.push_back({std::move(code), std::move(message)});
  }

  bool attribute(const AttributeName& att, const std::string& where) {
    if (p_.scopes.contains(att)) return true;
    report("unknown-attribute", where + ": unknown attribute '" + att.str() + "'");
    return false;
  }

  void value(const AttributeName& att, const AtomicValue& val,
             const std::string& where) {
    if (!attribute(att, where)) return;
    if (!p_.scopes.at(att).contains(val)) {
      report("scope-violation", where + ": value '" + val.str() +
                                    "' is outside the scope of '" + att.str() + "'");
    }
  }

  void group(const GroupId& g, const std::string& where) {
    if (!p_.hierarchy.contains(g)) {
      report("unknown-group", where + ": unknown group '" + g.str() + "'");
    }
  }

  void checkScopes() {
    for (const auto& [att, vals] : p_.scopes) {
      if (vals.empty()) {
        report("empty-scope", "attribute '" + att.str() + "' has an empty scope");
      }
    }
  }

  void checkHierarchy() {
    for (const auto& [senior, junior] : p_.hierarchy.danglingEdges()) {
      report("unknown-group", "seniority edge " + senior.str() + " > " +
                                  junior.str() + " references an undeclared group");
    }
    if (auto cycle = p_.hierarchy.findCycle()) {
      std::string path;
      for (const auto& g : *cycle) path += g.str() + " > ";
      path += cycle->front().str();
      report("hierarchy-cycle", "group hierarchy is cyclic: " + path);
    }
  }

  void checkState() {
    const DirectState& s = p_.initial;
    for (const auto& [att, vals] : s.userAttrs()) {
      for (const auto& v : vals) value(att, v, "initial user state");
    }
    for (const auto& [g, attrs] : s.groupAttrs()) {
      group(g, "initial group state");
      for (const auto& [att, vals] : attrs) {
        for (const auto& v : vals) value(att, v, "initial state of group " + g.str());
      }
    }
    for (const auto& g : s.userGroups()) group(g, "initial memberships");
  }

  void checkRules() {
    for (const auto& r : p_.rules) {
      std::string where = "rule #" + std::to_string(r.id) + " (" +
                          std::string(relationName(r.relation)) + ")";
      if (!p_.roles.contains(r.role)) {
        report("unknown-role", where + ": unknown role '" + r.role.str() + "'");
      }
      if (isValueRelation(r.relation)) {
        value(r.attr, r.value, where);
      } else {
        group(r.group, where);
      }
      forEachLiteral(r.pre, [&](const Precondition& lit, bool) {
        if (lit.isGroupLiteral()) {
          group(lit.group(), where);
          if (!isMembershipRelation(r.relation)) {
            report("misplaced-group-literal",
                   where + ": group literals are only allowed in canAssign/canRemove");
          }
        } else {
          value(lit.attribute(), lit.value(), where);
        }
      });
    }
  }

  const ProblemInstance& p_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validateInstance(const ProblemInstance& p) {
  return Checker(p).run();
}

void requireValid(const ProblemInstance& p) {
  auto violations = validateInstance(p);
  if (!violations.empty()) {
    throw InputError(violations.front().message);
  }
}

}  // namespace gurag
