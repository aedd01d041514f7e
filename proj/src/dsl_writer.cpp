#include "gurag/dsl.hpp"

namespace gurag {

namespace {

template <typename Set>
std::string renderSet(const Set& items) {
  if (items.empty()) return "{ }";
  std::string out = "{ ";
  bool first = true;
  for (const auto& it : items) {
    if (!first) out += ", ";
    out += it.str();
    first = false;
  }
  return out + " }";
}

std::string renderAtom(const Precondition& pre) {
  using K = Precondition::Kind;
  switch (pre.kind()) {
    case K::kTrue:
      return "true";
    case K::kNot:
      return "not(" + toString(pre.child()) + ")";
    case K::kAnd:
      return "(" + toString(pre) + ")";
    case K::kDirectVal:
      return pre.value().str() + " in direct(" + pre.attribute().str() + ")";
    case K::kEffVal:
      return pre.value().str() + " in effective(" + pre.attribute().str() + ")";
    case K::kDirectGroup:
      return pre.group().str() + " in directUg";
    case K::kEffGroup:
      return pre.group().str() + " in effUg";
  }
  return "true";
}

std::string renderRule(const Rule& r) {
  std::string out = "rule ";
  out += relationName(r.relation);
  if (isValueRelation(r.relation)) out += " " + r.attr.str();
  out += " : " + r.role.str() + " , " + toString(r.pre) + " -> ";
  out += isValueRelation(r.relation) ? r.value.str() : r.group.str();
  return out;
}

void renderAssignments(std::string& out, const AttributeValues& attrs) {
  for (const auto& [att, vals] : attrs) {
    if (!vals.empty()) out += "  " + att.str() + " = " + renderSet(vals) + "\n";
  }
}

}  // namespace

std::string toString(const Precondition& pre) {
  if (pre.kind() != Precondition::Kind::kAnd) return renderAtom(pre);
  // And nodes are right-nested, so the left side is never an And.
  return renderAtom(pre.left()) + " and " + toString(pre.right());
}

std::string toString(const ReachabilityQuery& q) {
  std::string out = "query ";
  out += queryTypeName(q.type);
  out += " {";
  bool first = true;
  for (const auto& [att, vset] : q.entries) {
    out += first ? " " : ", ";
    out += "e_" + att.str() + "(u) = " + renderSet(vset);
    first = false;
  }
  return out + " }";
}

std::string serializeInstance(const ProblemInstance& p,
                              const std::vector<ReachabilityQuery>& queries,
                              const std::vector<Plan>& plans) {
  std::string out;
  if (p.declaredLevel) {
    out += "scheme ";
    out += schemeLevelName(*p.declaredLevel);
    out += "\n";
  }
  for (const auto& [att, scope] : p.scopes) {
    out += "attr " + att.str() + " scope " + renderSet(scope) + "\n";
  }
  for (const auto& g : p.groups()) out += "group " + g.str() + "\n";
  for (const auto& [senior, junior] : p.hierarchy.seniority()) {
    out += "senior " + senior.str() + " > " + junior.str() + "\n";
  }
  for (const auto& r : p.roles) out += "role " + r.str() + "\n";

  const DirectState& s = p.initial;
  if (!s.userAttrs().empty() || !s.userGroups().empty()) {
    out += "\nuser {\n";
    renderAssignments(out, s.userAttrs());
    if (!s.userGroups().empty()) out += "  groups = " + renderSet(s.userGroups()) + "\n";
    out += "}\n";
  }
  bool firstGroupState = s.userAttrs().empty() && s.userGroups().empty();
  for (const auto& [g, attrs] : s.groupAttrs()) {
    if (firstGroupState) out += "\n";
    firstGroupState = false;
    out += "groupstate " + g.str() + " {\n";
    renderAssignments(out, attrs);
    out += "}\n";
  }

  out += "\nrules {\n";
  for (const auto& r : p.rules) out += "  " + renderRule(r) + "\n";
  out += "}\n";

  if (!queries.empty() || !plans.empty()) out += "\n";
  for (const auto& q : queries) out += toString(q) + "\n";
  for (const auto& plan : plans) {
    out += "plan {\n";
    for (const auto& req : plan.requests) out += "  " + toString(req) + ";\n";
    out += "}\n";
  }
  return out;
}

std::string serializeDocument(const SourceDocument& doc) {
  return serializeInstance(doc.instance, doc.queries, doc.plans);
}

}  // namespace gurag
