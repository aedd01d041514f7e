#include "gurag/policy.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

namespace gurag {

struct Precondition::Node {
  Kind kind = Kind::kTrue;
  Precondition a;  // child / left
  Precondition b;  // right
  AttributeName attr;
  AtomicValue value;
  GroupId group;
};

Precondition::Precondition() : node_(nullptr) {}
Precondition::Precondition(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

Precondition Precondition::always() { return Precondition(); }

Precondition Precondition::negate(Precondition child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->a = std::move(child);
  return Precondition(std::move(n));
}

Precondition Precondition::conj(Precondition left, Precondition right) {
  // (a and b) and c  ==>  a and (b and c)
  if (left.kind() == Kind::kAnd) {
    return conj(left.left(), conj(left.right(), std::move(right)));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->a = std::move(left);
  n->b = std::move(right);
  return Precondition(std::move(n));
}

Precondition Precondition::conj(const std::vector<Precondition>& parts) {
  if (parts.empty()) return always();
  Precondition acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) {
    acc = conj(*it, acc);
  }
  return acc;
}

Precondition Precondition::directValue(AttributeName att, AtomicValue val) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kDirectVal;
  n->attr = std::move(att);
  n->value = std::move(val);
  return Precondition(std::move(n));
}

Precondition Precondition::effectiveValue(AttributeName att, AtomicValue val) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kEffVal;
  n->attr = std::move(att);
  n->value = std::move(val);
  return Precondition(std::move(n));
}

Precondition Precondition::directGroup(GroupId g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kDirectGroup;
  n->group = std::move(g);
  return Precondition(std::move(n));
}

Precondition Precondition::effectiveGroup(GroupId g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kEffGroup;
  n->group = std::move(g);
  return Precondition(std::move(n));
}

Precondition::Kind Precondition::kind() const noexcept {
  return node_ ? node_->kind : Kind::kTrue;
}

namespace {

[[noreturn]] void wrongKind(const char* what) {
  throw ContractViolation(std::string("precondition node has no ") + what);
}

}  // namespace

const Precondition& Precondition::child() const {
  if (kind() != Kind::kNot) wrongKind("child");
  return node_->a;
}

const Precondition& Precondition::left() const {
  if (kind() != Kind::kAnd) wrongKind("left operand");
  return node_->a;
}

const Precondition& Precondition::right() const {
  if (kind() != Kind::kAnd) wrongKind("right operand");
  return node_->b;
}

const AttributeName& Precondition::attribute() const {
  if (kind() != Kind::kDirectVal && kind() != Kind::kEffVal) wrongKind("attribute");
  return node_->attr;
}

const AtomicValue& Precondition::value() const {
  if (kind() != Kind::kDirectVal && kind() != Kind::kEffVal) wrongKind("value");
  return node_->value;
}

const GroupId& Precondition::group() const {
  if (!isGroupLiteral()) wrongKind("group");
  return node_->group;
}

bool Precondition::isLiteral() const noexcept {
  switch (kind()) {
    case Kind::kDirectVal:
    case Kind::kEffVal:
    case Kind::kDirectGroup:
    case Kind::kEffGroup:
      return true;
    default:
      return false;
  }
}

std::vector<Precondition> Precondition::conjuncts() const {
  std::vector<Precondition> out;
  const Precondition* cur = this;
  while (cur->kind() == Kind::kAnd) {
    for (auto& c : cur->left().conjuncts()) out.push_back(c);
    cur = &cur->right();
  }
  out.push_back(*cur);
  return out;
}

bool operator==(const Precondition& a, const Precondition& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  using K = Precondition::Kind;
  switch (a.kind()) {
    case K::kTrue:
      return true;
    case K::kNot:
      return a.child() == b.child();
    case K::kAnd:
      return a.left() == b.left() && a.right() == b.right();
    case K::kDirectVal:
    case K::kEffVal:
      return a.attribute() == b.attribute() && a.value() == b.value();
    case K::kDirectGroup:
    case K::kEffGroup:
      return a.group() == b.group();
  }
  return false;
}

// --- Relations --------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 6> kRelationNames = {
    "canAddU", "canDeleteU", "canAddUG", "canDeleteUG", "canAssign", "canRemove"};

}  // namespace

std::string_view relationName(Relation r) {
  return kRelationNames[static_cast<std::size_t>(r)];
}

std::optional<Relation> parseRelation(std::string_view name) {
  for (std::size_t i = 0; i < kRelationNames.size(); ++i) {
    if (kRelationNames[i] == name) return static_cast<Relation>(i);
  }
  return std::nullopt;
}

bool isValueRelation(Relation r) { return !isMembershipRelation(r); }

bool isMembershipRelation(Relation r) {
  return r == Relation::kCanAssign || r == Relation::kCanRemove;
}

bool isDeletion(Relation r) {
  return r == Relation::kCanDeleteU || r == Relation::kCanDeleteUG ||
         r == Relation::kCanRemove;
}

bool isGroupSubjectRelation(Relation r) {
  return r == Relation::kCanAddUG || r == Relation::kCanDeleteUG;
}

bool ruleOrderLess(const Rule& a, const Rule& b) {
  const std::string& ta = isMembershipRelation(a.relation) ? a.group.str() : a.value.str();
  const std::string& tb = isMembershipRelation(b.relation) ? b.group.str() : b.value.str();
  return std::tie(a.relation, a.attr, ta, a.id) <
         std::tie(b.relation, b.attr, tb, b.id);
}

const Rule& RuleSet::addValueRule(Relation relation, AdminRole role,
                                  Precondition pre, AttributeName attr,
                                  AtomicValue value) {
  if (!isValueRelation(relation)) {
    throw ContractViolation("membership relation used as value rule");
  }
  Rule r;
  r.id = rules_.size();
  r.relation = relation;
  r.role = std::move(role);
  r.pre = std::move(pre);
  r.attr = std::move(attr);
  r.value = std::move(value);
  rules_.push_back(std::move(r));
  return rules_.back();
}

const Rule& RuleSet::addMembershipRule(Relation relation, AdminRole role,
                                       Precondition pre, GroupId group) {
  if (!isMembershipRelation(relation)) {
    throw ContractViolation("value relation used as membership rule");
  }
  Rule r;
  r.id = rules_.size();
  r.relation = relation;
  r.role = std::move(role);
  r.pre = std::move(pre);
  r.group = std::move(group);
  rules_.push_back(std::move(r));
  return rules_.back();
}

std::vector<const Rule*> RuleSet::ofRelation(Relation r) const {
  std::vector<const Rule*> out;
  for (const auto& rule : rules_) {
    if (rule.relation == r) out.push_back(&rule);
  }
  return out;
}

std::vector<const Rule*> RuleSet::ordered() const {
  std::vector<const Rule*> out;
  out.reserve(rules_.size());
  for (const auto& rule : rules_) out.push_back(&rule);
  std::sort(out.begin(), out.end(),
            [](const Rule* a, const Rule* b) { return ruleOrderLess(*a, *b); });
  return out;
}

// --- Evaluation -------------------------------------------------------------

bool evalPrecondition(const Precondition& pre, const EffectiveView& view,
                      const Subject& subject) {
  using K = Precondition::Kind;
  switch (pre.kind()) {
    case K::kTrue:
      return true;
    case K::kNot:
      return !evalPrecondition(pre.child(), view, subject);
    case K::kAnd:
      return evalPrecondition(pre.left(), view, subject) &&
             evalPrecondition(pre.right(), view, subject);
    case K::kDirectVal: {
      const ValueSet& vals =
          subject.isUser()
              ? view.state().userValues(pre.attribute())
              : view.state().groupValues(subject.group(), pre.attribute());
      return vals.contains(pre.value());
    }
    case K::kEffVal: {
      if (subject.isUser()) {
        return view.userValues(pre.attribute()).contains(pre.value());
      }
      return view.groupValues(subject.group(), pre.attribute()).contains(pre.value());
    }
    case K::kDirectGroup:
      if (!subject.isUser()) {
        throw ContractViolation("group literal evaluated against a group subject");
      }
      return view.state().userGroups().contains(pre.group());
    case K::kEffGroup:
      if (!subject.isUser()) {
        throw ContractViolation("group literal evaluated against a group subject");
      }
      return view.effectiveGroups().contains(pre.group());
  }
  return false;
}

bool evalPrecondition(const Precondition& pre, const DirectState& state,
                      const GroupHierarchy& h, const Subject& subject) {
  return evalPrecondition(pre, EffectiveView(state, h), subject);
}

// --- Classification ---------------------------------------------------------

std::string_view schemeLevelName(SchemeLevel level) {
  switch (level) {
    case SchemeLevel::kG0:
      return "G0";
    case SchemeLevel::kG1:
      return "G1";
    case SchemeLevel::kG1Plus:
      return "G1plus";
  }
  return "?";
}

std::optional<SchemeLevel> parseSchemeLevel(std::string_view name) {
  if (name == "G0") return SchemeLevel::kG0;
  if (name == "G1") return SchemeLevel::kG1;
  if (name == "G1plus") return SchemeLevel::kG1Plus;
  return std::nullopt;
}

namespace {

bool hasGroupLiteral(const Precondition& pre) {
  bool found = false;
  forEachLiteral(pre, [&](const Precondition& lit, bool) {
    if (lit.isGroupLiteral()) found = true;
  });
  return found;
}

bool hasNegation(const Precondition& pre) {
  switch (pre.kind()) {
    case Precondition::Kind::kNot:
      return true;
    case Precondition::Kind::kAnd:
      return hasNegation(pre.left()) || hasNegation(pre.right());
    default:
      return false;
  }
}

// A conjunction whose conjuncts are True, a direct literal, or a negated
// direct literal.
bool isDirectConjunction(const Precondition& pre) {
  for (const auto& c : pre.conjuncts()) {
    const Precondition* lit = &c;
    if (c.kind() == Precondition::Kind::kNot) lit = &c.child();
    switch (lit->kind()) {
      case Precondition::Kind::kTrue:
        if (lit != &c) return false;  // not(true) is not a literal
        break;
      case Precondition::Kind::kDirectVal:
      case Precondition::Kind::kDirectGroup:
        break;
      default:
        return false;
    }
  }
  return true;
}

}  // namespace

SchemeLevel classifyInstanceLevel(const RuleSet& rules) {
  bool crossAttribute = false;
  for (const auto& r : rules) {
    if (isMembershipRelation(r.relation) || hasGroupLiteral(r.pre)) {
      return SchemeLevel::kG1Plus;
    }
    forEachLiteral(r.pre, [&](const Precondition& lit, bool) {
      if (!lit.isGroupLiteral() && lit.attribute() != r.attr) crossAttribute = true;
    });
  }
  return crossAttribute ? SchemeLevel::kG1 : SchemeLevel::kG0;
}

RestrictionFlags checkRestrictions(const RuleSet& rules) {
  RestrictionFlags flags;
  flags.instanceLevel = classifyInstanceLevel(rules);
  std::map<std::pair<AttributeName, AtomicValue>, int> addsPerPair;
  std::map<GroupId, int> assignsPerGroup;
  for (const auto& r : rules) {
    if (hasNegation(r.pre)) flags.noNegation = false;
    if (isDeletion(r.relation)) flags.noDeletion = false;
    if (!isDirectConjunction(r.pre)) flags.singleRuleDirect = false;
    if (r.relation == Relation::kCanAddU || r.relation == Relation::kCanAddUG) {
      if (++addsPerPair[{r.attr, r.value}] > 1) flags.singleRuleDirect = false;
    } else if (r.relation == Relation::kCanAssign) {
      if (++assignsPerGroup[r.group] > 1) flags.singleRuleDirect = false;
    }
  }
  return flags;
}

}  // namespace gurag
