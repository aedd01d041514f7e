#include <algorithm>
#include <map>
#include <set>

#include "gurag/dsl.hpp"

namespace gurag {

std::string formatDiagnostic(const Diagnostic& d, std::string_view source) {
  std::string out(source);
  out += ':' + std::to_string(d.line) + ':' + std::to_string(d.column) + ": ";
  out += d.isError() ? "error " : "warning ";
  return out + d.code + ": " + d.message;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { kIdent, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t line = 1, column = 1;
  bool lineStart = false;  // first token on its line

  bool is(std::string_view s) const { return kind != Kind::kEnd && text == s; }
  bool ident() const { return kind == Kind::kIdent; }
};

bool identChar(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '.';
}

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  bool atLineStart = true;
  std::size_t i = 0;
  auto push = [&](Token::Kind kind, std::string s, std::size_t c) {
    out.push_back({kind, std::move(s), line, c, atLineStart});
    atLineStart = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      atLineStart = true;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (identChar(c)) {
      std::size_t start = i, startCol = col;
      while (i < text.size() && identChar(text[i])) {
        ++i;
        ++col;
      }
      push(Token::Kind::kIdent, std::string(text.substr(start, i - start)), startCol);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Token::Kind::kPunct, "->", col);
      i += 2;
      col += 2;
    } else if (std::string_view("{}(),=>:;").find(c) != std::string_view::npos) {
      push(Token::Kind::kPunct, std::string(1, c), col);
      ++i;
      ++col;
    } else {
      std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                              ? "byte 0x" + std::string(1, "0123456789abcdef"[(c >> 4) & 0xf]) +
                                    std::string(1, "0123456789abcdef"[c & 0xf])
                              : "'" + std::string(1, c) + "'";
      diags.push_back({Diagnostic::Severity::kError, line, col,
                       "unexpected character " + shown, "E001"});
      ++i;
      ++col;
    }
  }
  Token end;
  end.line = line;
  end.column = col;
  end.lineStart = true;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Syntax tree with positions

using Tok = Token;

struct SetAst {
  Tok open;
  std::vector<Tok> items;
};

struct AssignAst {
  Tok attr;
  SetAst values;
};

struct PreAst {
  Precondition::Kind kind = Precondition::Kind::kTrue;
  Tok subject;  // value or group token
  Tok attr;     // for value literals
  std::vector<PreAst> kids;
};

struct RuleAst {
  Tok relation;
  std::optional<Tok> attr;
  Tok role;
  PreAst pre;
  Tok target;
};

struct QueryAst {
  Tok type;
  std::vector<std::pair<Tok, SetAst>> entries;  // attribute token (name only)
};

struct RequestAst {
  Tok kind;
  std::vector<Tok> args;
};

struct PlanAst {
  Tok keyword;
  std::vector<RequestAst> requests;
};

struct FileAst {
  std::optional<Tok> scheme;
  std::vector<std::pair<Tok, SetAst>> attrs;
  std::vector<Tok> groups;
  std::vector<std::pair<Tok, Tok>> edges;
  std::vector<Tok> roles;
  std::vector<Tok> userBlocks;
  std::vector<AssignAst> user;
  std::vector<std::pair<Tok, std::vector<AssignAst>>> groupStates;
  std::vector<RuleAst> rules;
  std::vector<QueryAst> queries;
  std::vector<PlanAst> plans;
};

struct SyntaxError {
  Tok at;
  std::string message;
};

const std::set<std::string_view> kStatementKeywords = {
    "scheme", "attr", "group", "senior", "role", "user", "groupstate",
    "rules",  "rule", "query", "plan"};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags)
      : toks_(std::move(toks)), diags_(diags) {}

  FileAst parse() {
    FileAst file;
    while (peek().kind != Token::Kind::kEnd) {
      if (peek().is("}") && strayCloses_ > 0) {
        --strayCloses_;
        next();
        continue;
      }
      std::size_t before = pos_;
      depth_ = 0;
      try {
        statement(file);
      } catch (const SyntaxError& e) {
        diags_.push_back({Diagnostic::Severity::kError, e.at.line, e.at.column, e.message, "E002"});
        if (pos_ == before) next();
        recover();
      }
    }
    return file;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at, std::string_view what) {
    std::string found = at.kind == Token::Kind::kEnd ? "end of input" : "'" + at.text + "'";
    throw SyntaxError{at, "expected " + std::string(what) + ", found " + found};
  }

  Token expect(std::string_view punct) {
    if (!peek().is(punct) || peek().kind != Token::Kind::kPunct) {
      fail(peek(), "'" + std::string(punct) + "'");
    }
    if (punct == "{") ++depth_;
    if (punct == "}") --depth_;
    return next();
  }

  Token keyword(std::string_view kw) {
    if (!peek().ident() || peek().text != kw) fail(peek(), "'" + std::string(kw) + "'");
    return next();
  }

  // A keyword opening a new line belongs to the next statement.
  Token ident(std::string_view what) {
    const Token& t = peek();
    if (!t.ident() || (t.lineStart && kStatementKeywords.contains(t.text))) fail(t, what);
    return next();
  }

  /// Skips to the next statement keyword that starts a line. Closing braces
  /// of blocks abandoned mid-way are swallowed later.
  void recover() {
    while (peek().kind != Token::Kind::kEnd) {
      const Token& t = peek();
      if (t.lineStart && t.ident() && kStatementKeywords.contains(t.text)) break;
      if (t.lineStart && t.is("}") && depth_ > 0) {
        --depth_;
        next();
        if (depth_ == 0) break;
        continue;
      }
      if (t.is("{")) ++depth_;
      if (t.is("}") && depth_ > 0) --depth_;
      next();
    }
    strayCloses_ += depth_;
    depth_ = 0;
  }

  SetAst set() {
    SetAst s;
    s.open = expect("{");
    if (!peek().is("}")) {
      s.items.push_back(ident("a value"));
      while (peek().is(",")) {
        next();
        s.items.push_back(ident("a value"));
      }
    }
    expect("}");
    return s;
  }

  std::vector<AssignAst> assignments() {
    std::vector<AssignAst> out;
    expect("{");
    while (!peek().is("}")) {
      AssignAst a;
      a.attr = ident("an attribute name or '}'");
      expect("=");
      a.values = set();
      out.push_back(std::move(a));
    }
    expect("}");
    return out;
  }

  void statement(FileAst& f) {
    const Token& t = peek();
    if (!t.ident()) fail(t, "a statement");
    if (t.text == "scheme") {
      next();
      f.scheme = ident("a scheme name");
    } else if (t.text == "attr") {
      next();
      Tok name = ident("an attribute name");
      keyword("scope");
      f.attrs.emplace_back(name, set());
    } else if (t.text == "group") {
      next();
      f.groups.push_back(ident("a group name"));
    } else if (t.text == "senior") {
      next();
      Tok senior = ident("a group name");
      expect(">");
      f.edges.emplace_back(senior, ident("a group name"));
    } else if (t.text == "role") {
      next();
      f.roles.push_back(ident("a role name"));
    } else if (t.text == "user") {
      f.userBlocks.push_back(next());
      auto entries = assignments();
      f.user.insert(f.user.end(), entries.begin(), entries.end());
    } else if (t.text == "groupstate") {
      next();
      Tok g = ident("a group name");
      f.groupStates.emplace_back(g, assignments());
    } else if (t.text == "rules") {
      next();
      expect("{");
      while (!peek().is("}")) {
        if (peek().kind == Token::Kind::kEnd) fail(peek(), "'}'");
        f.rules.push_back(rule());
      }
      expect("}");
    } else if (t.text == "rule") {
      fail(t, "a statement (rules belong inside 'rules { }')");
    } else if (t.text == "query") {
      f.queries.push_back(query());
    } else if (t.text == "plan") {
      f.plans.push_back(plan());
    } else {
      fail(t, "a statement");
    }
  }

  RuleAst rule() {
    RuleAst r;
    keyword("rule");
    r.relation = ident("a relation name");
    if (peek().ident()) r.attr = next();
    expect(":");
    r.role = ident("a role name");
    expect(",");
    r.pre = precondition();
    expect("->");
    r.target = ident("a value or group");
    return r;
  }

  PreAst precondition() {
    PreAst first = atom();
    if (!peek().is("and")) return first;
    PreAst conj;
    conj.kind = Precondition::Kind::kAnd;
    conj.kids.push_back(std::move(first));
    while (peek().is("and") && peek().ident()) {
      next();
      conj.kids.push_back(atom());
    }
    return conj;
  }

  PreAst atom() {
    PreAst a;
    if (peek().is("(")) {
      next();
      a = precondition();
      expect(")");
      return a;
    }
    if (peek().is("true") && !peek(1).is("in")) {
      a.subject = next();
      return a;
    }
    if (peek().is("not") && peek(1).is("(")) {
      a.kind = Precondition::Kind::kNot;
      a.subject = next();
      next();
      a.kids.push_back(precondition());
      expect(")");
      return a;
    }
    a.subject = ident("a precondition");
    keyword("in");
    Tok which = ident("'direct', 'effective', 'directUg' or 'effUg'");
    if (which.text == "direct" || which.text == "effective") {
      a.kind = which.text == "direct" ? Precondition::Kind::kDirectVal
                                      : Precondition::Kind::kEffVal;
      expect("(");
      a.attr = ident("an attribute name");
      expect(")");
    } else if (which.text == "directUg") {
      a.kind = Precondition::Kind::kDirectGroup;
    } else if (which.text == "effUg") {
      a.kind = Precondition::Kind::kEffGroup;
    } else {
      fail(which, "'direct', 'effective', 'directUg' or 'effUg'");
    }
    return a;
  }

  QueryAst query() {
    QueryAst q;
    keyword("query");
    q.type = ident("'strict' or 'relaxed'");
    if (q.type.text != "strict" && q.type.text != "relaxed") {
      fail(q.type, "'strict' or 'relaxed'");
    }
    expect("{");
    if (!peek().is("}")) {
      for (;;) {
        Tok t = ident("e_<attribute>(u)");
        if (t.text.size() <= 2 || t.text.compare(0, 2, "e_") != 0) {
          fail(t, "e_<attribute>(u)");
        }
        Tok attr = t;
        attr.text = t.text.substr(2);
        attr.column += 2;
        expect("(");
        keyword("u");
        expect(")");
        expect("=");
        q.entries.emplace_back(attr, set());
        if (!peek().is(",")) break;
        next();
      }
    }
    expect("}");
    return q;
  }

  PlanAst plan() {
    PlanAst p;
    p.keyword = next();
    expect("{");
    while (!peek().is("}")) {
      RequestAst r;
      r.kind = ident("a request or '}'");
      expect("(");
      r.args.push_back(ident("an argument"));
      while (peek().is(",")) {
        next();
        r.args.push_back(ident("an argument"));
      }
      expect(")");
      p.requests.push_back(std::move(r));
      expect(";");
    }
    expect("}");
    return p;
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  int strayCloses_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution

class Resolver {
 public:
  explicit Resolver(std::vector<Diagnostic>& diags) : diags_(diags) {}

  SourceDocument resolve(const FileAst& f) {
    SourceDocument doc;
    ProblemInstance& p = doc.instance;

    if (f.scheme) {
      if (auto lvl = parseSchemeLevel(f.scheme->text)) {
        p.declaredLevel = lvl;
      } else {
        error(*f.scheme, "E002", "unknown scheme '" + f.scheme->text + "' (G0, G1 or G1plus)");
      }
    }

    for (const auto& [name, scope] : f.attrs) {
      if (name.text == "groups") {
        error(name, "E023", "'groups' is reserved for group memberships");
        continue;
      }
      if (p.scopes.contains(AttributeName(name.text))) {
        error(name, "E003", "attribute '" + name.text + "' is already declared");
        continue;
      }
      if (scope.items.empty()) error(scope.open, "E022", "attribute '" + name.text + "' has an empty scope");
      ValueSet vals;
      for (const auto& v : scope.items) {
        if (!vals.insert(AtomicValue(v.text)).second) {
          error(v, "E003", "value '" + v.text + "' is listed twice");
        }
      }
      p.scopes[AttributeName(name.text)] = std::move(vals);
    }
    scopes_ = &p.scopes;

    GroupSet groups;
    for (const auto& g : f.groups) {
      if (!groups.insert(GroupId(g.text)).second) {
        error(g, "E003", "group '" + g.text + "' is already declared");
      }
    }
    groups_ = groups;

    std::set<SeniorityEdge> edges;
    std::map<SeniorityEdge, Tok> edgeTok;
    for (const auto& [s, j] : f.edges) {
      bool ok = knownGroup(s) & knownGroup(j);
      if (!ok) continue;
      if (s.text == j.text) {
        warning(s, "W002", "reflexive seniority edge is implied and ignored");
        continue;
      }
      SeniorityEdge e{GroupId(s.text), GroupId(j.text)};
      if (!edges.insert(e).second) {
        error(s, "E003", "seniority edge " + s.text + " > " + j.text + " is already declared");
      }
      edgeTok.emplace(e, s);
    }
    p.hierarchy = GroupHierarchy(groups, edges);
    if (auto cycle = p.hierarchy.findCycle()) {
      std::string path;
      for (const auto& g : *cycle) path += g.str() + " > ";
      path += cycle->front().str();
      SeniorityEdge first{(*cycle)[0], (*cycle)[1 % cycle->size()]};
      auto it = edgeTok.find(first);
      Tok at = it != edgeTok.end() ? it->second : edgeTok.begin()->second;
      error(at, "E020", "group hierarchy has a cycle: " + path);
    }

    for (const auto& r : f.roles) {
      if (!p.roles.insert(AdminRole(r.text)).second) {
        error(r, "E003", "role '" + r.text + "' is already declared");
      }
    }
    roles_ = &p.roles;

    if (f.userBlocks.size() > 1) {
      error(f.userBlocks[1], "E003", "the user block is already declared");
    }
    std::set<std::string> seenUserAttrs;
    for (const auto& a : f.user) {
      if (!seenUserAttrs.insert(a.attr.text).second) {
        error(a.attr, "E003", "'" + a.attr.text + "' is assigned twice in the user block");
        continue;
      }
      if (a.attr.text == "groups") {
        for (const auto& g : a.values.items) {
          if (knownGroup(g)) p.initial.assignGroup(GroupId(g.text));
        }
        continue;
      }
      for (const auto& v : a.values.items) {
        if (auto att = value(a.attr, v)) p.initial.addUserValue(*att, AtomicValue(v.text));
      }
    }

    std::set<std::string> seenStates;
    for (const auto& [g, entries] : f.groupStates) {
      if (!knownGroup(g)) continue;
      if (!seenStates.insert(g.text).second) {
        error(g, "E003", "groupstate for '" + g.text + "' is already declared");
        continue;
      }
      std::set<std::string> seen;
      for (const auto& a : entries) {
        if (!seen.insert(a.attr.text).second) {
          error(a.attr, "E003", "'" + a.attr.text + "' is assigned twice for group " + g.text);
          continue;
        }
        for (const auto& v : a.values.items) {
          if (auto att = value(a.attr, v)) {
            p.initial.addGroupValue(GroupId(g.text), *att, AtomicValue(v.text));
          }
        }
      }
    }

    for (const auto& r : f.rules) rule(r, p.rules);

    for (const auto& q : f.queries) {
      ReachabilityQuery rq;
      rq.type = q.type.text == "strict" ? QueryType::kStrict : QueryType::kRelaxed;
      for (const auto& [attr, vals] : q.entries) {
        if (!knownAttr(attr)) continue;
        AttributeName att(attr.text);
        if (rq.entries.contains(att)) {
          error(attr, "E003", "attribute '" + attr.text + "' appears twice in the query");
          continue;
        }
        ValueSet vs;
        for (const auto& v : vals.items) {
          if (value(attr, v)) vs.insert(AtomicValue(v.text));
        }
        rq.entries[att] = std::move(vs);
      }
      doc.queries.push_back(std::move(rq));
    }

    for (const auto& pl : f.plans) {
      Plan plan;
      for (const auto& r : pl.requests) {
        if (auto req = request(r)) plan.requests.push_back(std::move(*req));
      }
      doc.plans.push_back(std::move(plan));
    }

    if (p.declaredLevel && !hasErrors()) {
      SchemeLevel actual = classifyInstanceLevel(p.rules);
      if (static_cast<int>(actual) > static_cast<int>(*p.declaredLevel)) {
        warning(*f.scheme, "W001",
                "rules need scheme " + std::string(schemeLevelName(actual)) +
                    " but " + std::string(schemeLevelName(*p.declaredLevel)) + " is declared");
      }
    }
    return doc;
  }

  bool hasErrors() const {
    return std::any_of(diags_.begin(), diags_.end(),
                       [](const Diagnostic& d) { return d.isError(); });
  }

 private:
  void error(const Tok& at, const char* code, std::string msg) {
    diags_.push_back({Diagnostic::Severity::kError, at.line, at.column, std::move(msg), code});
  }
  void warning(const Tok& at, const char* code, std::string msg) {
    diags_.push_back({Diagnostic::Severity::kWarning, at.line, at.column, std::move(msg), code});
  }

  bool knownGroup(const Tok& g) {
    if (groups_.contains(GroupId(g.text))) return true;
    error(g, "E012", "unknown group '" + g.text + "'");
    return false;
  }
  bool knownRole(const Tok& r) {
    if (roles_->contains(AdminRole(r.text))) return true;
    error(r, "E013", "unknown role '" + r.text + "'");
    return false;
  }
  bool knownAttr(const Tok& a) {
    if (scopes_->contains(AttributeName(a.text))) return true;
    error(a, "E010", "unknown attribute '" + a.text + "'");
    return false;
  }
  /// Resolves att and checks v against its scope.
  std::optional<AttributeName> value(const Tok& att, const Tok& v) {
    if (!knownAttr(att)) return std::nullopt;
    AttributeName name(att.text);
    if (!scopes_->at(name).contains(AtomicValue(v.text))) {
      error(v, "E011", "value '" + v.text + "' is outside the scope of '" + att.text + "'");
      return std::nullopt;
    }
    return name;
  }

  std::optional<Precondition> pre(const PreAst& a, bool groupsAllowed, bool& ok) {
    using K = Precondition::Kind;
    switch (a.kind) {
      case K::kTrue:
        return Precondition::always();
      case K::kNot: {
        auto c = pre(a.kids[0], groupsAllowed, ok);
        return c ? std::optional(Precondition::negate(*c)) : std::nullopt;
      }
      case K::kAnd: {
        std::vector<Precondition> parts;
        for (const auto& k : a.kids) {
          if (auto c = pre(k, groupsAllowed, ok)) parts.push_back(*c);
        }
        return Precondition::conj(parts);
      }
      case K::kDirectVal:
      case K::kEffVal:
        if (!value(a.attr, a.subject)) {
          ok = false;
          return std::nullopt;
        }
        return a.kind == K::kDirectVal
                   ? Precondition::directValue(AttributeName(a.attr.text), AtomicValue(a.subject.text))
                   : Precondition::effectiveValue(AttributeName(a.attr.text), AtomicValue(a.subject.text));
      case K::kDirectGroup:
      case K::kEffGroup:
        if (!groupsAllowed) {
          error(a.subject, "E021", "group membership conjuncts are only allowed in canAssign and canRemove rules");
          ok = false;
          return std::nullopt;
        }
        if (!knownGroup(a.subject)) {
          ok = false;
          return std::nullopt;
        }
        return a.kind == K::kDirectGroup ? Precondition::directGroup(GroupId(a.subject.text))
                                         : Precondition::effectiveGroup(GroupId(a.subject.text));
    }
    return std::nullopt;
  }

  void rule(const RuleAst& r, RuleSet& rules) {
    auto rel = parseRelation(r.relation.text);
    if (!rel) {
      error(r.relation, "E002", "unknown relation '" + r.relation.text + "'");
      return;
    }
    bool ok = knownRole(r.role);
    if (isValueRelation(*rel)) {
      if (!r.attr) {
        error(r.relation, "E002", std::string(relationName(*rel)) + " needs an attribute");
        return;
      }
      ok = value(*r.attr, r.target).has_value() && ok;
    } else {
      if (r.attr) {
        error(*r.attr, "E002", std::string(relationName(*rel)) + " takes no attribute");
        return;
      }
      ok = knownGroup(r.target) && ok;
    }
    auto condition = pre(r.pre, isMembershipRelation(*rel), ok);
    if (!ok || !condition) return;
    if (isValueRelation(*rel)) {
      rules.addValueRule(*rel, AdminRole(r.role.text), *condition,
                         AttributeName(r.attr->text), AtomicValue(r.target.text));
    } else {
      rules.addMembershipRule(*rel, AdminRole(r.role.text), *condition, GroupId(r.target.text));
    }
  }

  std::optional<Request> request(const RequestAst& r) {
    static const std::map<std::string, std::pair<RequestKind, std::size_t>> kinds = {
        {"addU", {RequestKind::kAddU, 3}},         {"deleteU", {RequestKind::kDeleteU, 3}},
        {"addUG", {RequestKind::kAddUG, 4}},       {"deleteUG", {RequestKind::kDeleteUG, 4}},
        {"assign", {RequestKind::kAssign, 2}},     {"remove", {RequestKind::kRemove, 2}}};
    auto it = kinds.find(r.kind.text);
    if (it == kinds.end()) {
      error(r.kind, "E002", "unknown request '" + r.kind.text + "'");
      return std::nullopt;
    }
    auto [kind, arity] = it->second;
    if (r.args.size() != arity) {
      error(r.kind, "E002", r.kind.text + " takes " + std::to_string(arity) + " arguments");
      return std::nullopt;
    }
    const auto& a = r.args;
    bool ok = knownRole(a[0]);
    AdminRole role(a[0].text);
    switch (kind) {
      case RequestKind::kAddU:
      case RequestKind::kDeleteU:
        if (!value(a[1], a[2]) || !ok) return std::nullopt;
        return Request{kind, {}, AttributeName(a[1].text), AtomicValue(a[2].text), role};
      case RequestKind::kAddUG:
      case RequestKind::kDeleteUG:
        ok = knownGroup(a[1]) && ok;
        if (!value(a[2], a[3]) || !ok) return std::nullopt;
        return Request{kind, GroupId(a[1].text), AttributeName(a[2].text),
                       AtomicValue(a[3].text), role};
      case RequestKind::kAssign:
      case RequestKind::kRemove:
        if (!knownGroup(a[1]) || !ok) return std::nullopt;
        return Request{kind, GroupId(a[1].text), {}, {}, role};
    }
    return std::nullopt;
  }

  std::vector<Diagnostic>& diags_;
  const ScopeTable* scopes_ = nullptr;
  GroupSet groups_;
  const std::set<AdminRole>* roles_ = nullptr;
};

}  // namespace

ParseResult parseInstance(std::string_view text) {
  ParseResult result;
  auto tokens = lex(text, result.diagnostics);
  FileAst ast = Parser(std::move(tokens), result.diagnostics).parse();
  Resolver resolver(result.diagnostics);
  SourceDocument doc = resolver.resolve(ast);
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.line, a.column) < std::tie(b.line, b.column);
                   });
  if (!resolver.hasErrors()) {
    doc.text = std::string(text);
    result.document = std::move(doc);
  }
  return result;
}

}  // namespace gurag
