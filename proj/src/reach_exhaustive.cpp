#include "gurag/reach_exhaustive.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace gurag {

std::string_view boundName(Bound b) {
  switch (b) {
    case Bound::kDepth:
      return "maxDepth";
    case Bound::kStates:
      return "maxStates";
    case Bound::kTime:
      return "maxMillis";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Canonical text keys

namespace {

void appendEscaped(std::string& out, const std::string& token) {
  for (char c : token) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
}

std::vector<std::string> splitFields(std::string_view line) {
  std::vector<std::string> fields(1);
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '\t') {
      fields.emplace_back();
    } else if (c == '\\') {
      if (++i == line.size()) throw InputError("state key: dangling escape");
      switch (line[i]) {
        case '\\':
          fields.back() += '\\';
          break;
        case 't':
          fields.back() += '\t';
          break;
        case 'n':
          fields.back() += '\n';
          break;
        default:
          throw InputError("state key: bad escape");
      }
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::string canonicalEncode(const DirectState& state) {
  std::string out;
  auto field = [&](const std::string& s) {
    out += '\t';
    appendEscaped(out, s);
  };
  for (const auto& [att, vals] : state.userAttrs()) {
    for (const auto& v : vals) {
      out += 'U';
      field(att.str());
      field(v.str());
      out += '\n';
    }
  }
  for (const auto& [g, attrs] : state.groupAttrs()) {
    for (const auto& [att, vals] : attrs) {
      for (const auto& v : vals) {
        out += 'G';
        field(g.str());
        field(att.str());
        field(v.str());
        out += '\n';
      }
    }
  }
  for (const auto& g : state.userGroups()) {
    out += 'M';
    field(g.str());
    out += '\n';
  }
  return out;
}

DirectState decodeState(std::string_view key) {
  DirectState s;
  while (!key.empty()) {
    auto nl = key.find('\n');
    if (nl == std::string_view::npos) throw InputError("state key: missing newline");
    auto f = splitFields(key.substr(0, nl));
    key.remove_prefix(nl + 1);
    if (f[0] == "U" && f.size() == 3) {
      s.addUserValue(AttributeName(f[1]), AtomicValue(f[2]));
    } else if (f[0] == "G" && f.size() == 4) {
      s.addGroupValue(GroupId(f[1]), AttributeName(f[2]), AtomicValue(f[3]));
    } else if (f[0] == "M" && f.size() == 2) {
      s.assignGroup(GroupId(f[1]));
    } else {
      throw InputError("state key: malformed fact line");
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Packed search

namespace {

using Word = std::uint64_t;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Bit positions: user pairs, then one block of pairs per group, then
/// memberships.
struct Layout {
  std::vector<std::pair<AttributeName, AtomicValue>> pairs;
  std::map<std::pair<AttributeName, AtomicValue>, int> pairIndex;
  std::vector<GroupId> groups;
  std::map<GroupId, int> groupIndex;
  std::vector<std::vector<int>> closure;  // junior closure by group index
  std::size_t np = 0, ng = 0, words = 0;

  explicit Layout(const ProblemInstance& p) {
    for (const auto& [att, vals] : p.scopes) {
      for (const auto& v : vals) {
        pairIndex[{att, v}] = static_cast<int>(pairs.size());
        pairs.emplace_back(att, v);
      }
    }
    for (const auto& g : p.groups()) {
      groupIndex[g] = static_cast<int>(groups.size());
      groups.push_back(g);
    }
    np = pairs.size();
    ng = groups.size();
    for (const auto& g : groups) {
      std::vector<int> c;
      for (const auto& j : p.hierarchy.juniorClosure(g)) c.push_back(groupIndex.at(j));
      closure.push_back(std::move(c));
    }
    words = std::max<std::size_t>(1, (np * (1 + ng) + ng + 63) / 64);
  }

  int pair(const AttributeName& att, const AtomicValue& v) const {
    auto it = pairIndex.find({att, v});
    return it == pairIndex.end() ? -1 : it->second;
  }
  std::size_t userBit(int k) const { return static_cast<std::size_t>(k); }
  std::size_t groupBit(int g, int k) const { return np + g * np + k; }
  std::size_t memberBit(int g) const { return np + ng * np + g; }

  void pack(const DirectState& s, Word* out) const {
    std::fill(out, out + words, 0);
    auto set = [&](std::size_t b) { out[b / 64] |= Word{1} << (b % 64); };
    auto need = [&](const AttributeName& att, const AtomicValue& v) {
      int k = pair(att, v);
      if (k < 0) throw InputError("state value " + att.str() + "=" + v.str() + " is out of scope");
      return k;
    };
    for (const auto& [att, vals] : s.userAttrs()) {
      for (const auto& v : vals) set(userBit(need(att, v)));
    }
    for (const auto& [g, attrs] : s.groupAttrs()) {
      int gi = groupIndex.at(g);
      for (const auto& [att, vals] : attrs) {
        for (const auto& v : vals) set(groupBit(gi, need(att, v)));
      }
    }
    for (const auto& g : s.userGroups()) set(memberBit(groupIndex.at(g)));
  }

  DirectState unpack(const Word* w) const {
    auto bit = [&](std::size_t b) { return (w[b / 64] >> (b % 64)) & 1; };
    DirectState s;
    for (std::size_t k = 0; k < np; ++k) {
      if (bit(userBit(static_cast<int>(k)))) s.addUserValue(pairs[k].first, pairs[k].second);
    }
    for (std::size_t g = 0; g < ng; ++g) {
      for (std::size_t k = 0; k < np; ++k) {
        if (bit(groupBit(static_cast<int>(g), static_cast<int>(k)))) {
          s.addGroupValue(groups[g], pairs[k].first, pairs[k].second);
        }
      }
      if (bit(memberBit(static_cast<int>(g)))) s.assignGroup(groups[g]);
    }
    return s;
  }
};

/// Precondition flattened into an index-linked node array.
struct Compiled {
  struct Node {
    Precondition::Kind kind;
    int a = -1, b = -1;  // children
    int arg = -1;        // pair or group index; -1 = never holds
  };
  std::vector<Node> nodes;
  int root = -1;

  Compiled(const Precondition& pre, const Layout& L) { root = add(pre, L); }

  int add(const Precondition& pre, const Layout& L) {
    Node n{pre.kind()};
    switch (pre.kind()) {
      case Precondition::Kind::kTrue:
        break;
      case Precondition::Kind::kNot:
        n.a = add(pre.child(), L);
        break;
      case Precondition::Kind::kAnd:
        n.a = add(pre.left(), L);
        n.b = add(pre.right(), L);
        break;
      case Precondition::Kind::kDirectVal:
      case Precondition::Kind::kEffVal:
        n.arg = L.pair(pre.attribute(), pre.value());
        break;
      case Precondition::Kind::kDirectGroup:
      case Precondition::Kind::kEffGroup: {
        auto it = L.groupIndex.find(pre.group());
        n.arg = it == L.groupIndex.end() ? -1 : it->second;
        break;
      }
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }
};

/// Evaluation context over one packed state.
class Eval {
 public:
  Eval(const Layout& L, const Word* w) : L_(L), w_(w), effGroups_(L.ng, 0) {
    for (std::size_t g = 0; g < L.ng; ++g) {
      if (bit(L.memberBit(static_cast<int>(g)))) {
        for (int j : L.closure[g]) effGroups_[j] = 1;
      }
    }
  }

  bool bit(std::size_t b) const { return (w_[b / 64] >> (b % 64)) & 1; }

  bool userEffective(int k) const {
    if (bit(L_.userBit(k))) return true;
    for (std::size_t g = 0; g < L_.ng; ++g) {
      if (effGroups_[g] && bit(L_.groupBit(static_cast<int>(g), k))) return true;
    }
    return false;
  }

  bool holds(const Compiled& c, int subject) const { return eval(c, c.root, subject); }

 private:
  bool eval(const Compiled& c, int i, int subject) const {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case Precondition::Kind::kTrue:
        return true;
      case Precondition::Kind::kNot:
        return !eval(c, n.a, subject);
      case Precondition::Kind::kAnd:
        return eval(c, n.a, subject) && eval(c, n.b, subject);
      case Precondition::Kind::kDirectVal:
        if (n.arg < 0) return false;
        return subject < 0 ? bit(L_.userBit(n.arg)) : bit(L_.groupBit(subject, n.arg));
      case Precondition::Kind::kEffVal:
        if (n.arg < 0) return false;
        if (subject < 0) return userEffective(n.arg);
        for (int j : L_.closure[subject]) {
          if (bit(L_.groupBit(j, n.arg))) return true;
        }
        return false;
      case Precondition::Kind::kDirectGroup:
        if (subject >= 0) throw ContractViolation("group literal evaluated for a group");
        return n.arg >= 0 && bit(L_.memberBit(n.arg));
      case Precondition::Kind::kEffGroup:
        if (subject >= 0) throw ContractViolation("group literal evaluated for a group");
        return n.arg >= 0 && effGroups_[n.arg];
    }
    return false;
  }

  const Layout& L_;
  const Word* w_;
  std::vector<char> effGroups_;
};

struct RequestInstance {
  Request request;
  std::size_t bit = 0;
  bool add = true;
  int subject = -1;
  std::vector<std::size_t> rules;  // indices into compiled rules
};

struct Goal {
  bool impossible = false;
  std::vector<int> mustHave;
  std::vector<int> mustNot;

  Goal(const Layout& L, const ProblemInstance& p, const ReachabilityQuery& q) {
    for (const auto& [att, vset] : q.entries) {
      for (const auto& v : vset) {
        int k = L.pair(att, v);
        if (k < 0) {
          impossible = true;
        } else {
          mustHave.push_back(k);
        }
      }
      if (q.type != QueryType::kStrict) continue;
      auto scope = p.scopes.find(att);
      if (scope == p.scopes.end()) continue;
      for (const auto& v : scope->second) {
        if (!vset.contains(v)) mustNot.push_back(L.pair(att, v));
      }
    }
  }

  bool satisfied(const Eval& e) const {
    if (impossible) return false;
    for (int k : mustHave) {
      if (!e.userEffective(k)) return false;
    }
    for (int k : mustNot) {
      if (e.userEffective(k)) return false;
    }
    return true;
  }
};

/// Open-addressing set of arena indices.
class StateTable {
 public:
  StateTable(const std::vector<Word>& arena, std::size_t words)
      : arena_(arena), words_(words), slots_(1024, kNone) {}

  static std::uint64_t hash(const Word* w, std::size_t n) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t x = w[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      h ^= x ^ (x >> 31);
    }
    return h;
  }

  bool contains(const Word* key, std::uint64_t h) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      std::uint32_t s = slots_[i];
      if (s == kNone) return false;
      if (equal(s, key)) return true;
    }
  }

  /// The arena must already hold index `idx`.
  void insert(std::uint32_t idx, std::uint64_t h) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    place(idx, h);
    ++count_;
  }

 private:
  bool equal(std::uint32_t idx, const Word* key) const {
    return std::equal(key, key + words_, arena_.data() + idx * words_);
  }

  void place(std::uint32_t idx, std::uint64_t h) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != kNone) i = (i + 1) & mask;
    slots_[i] = idx;
  }

  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, kNone);
    old.swap(slots_);
    for (std::uint32_t idx : old) {
      if (idx != kNone) place(idx, hash(arena_.data() + idx * words_, words_));
    }
  }

  const std::vector<Word>& arena_;
  std::size_t words_;
  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

class Searcher {
 public:
  Searcher(const ProblemInstance& p, const SearchBounds& b, const SearchOptions& o)
      : p_(p), b_(b), threads_(std::max(1u, o.threads)), L_(p), table_(arena_, L_.words) {
    for (const auto& r : p.rules) compiled_.emplace_back(r.pre, L_);
    buildRequests();
  }

  struct Result {
    SearchOutcome::Kind kind = SearchOutcome::Kind::kUnreachable;
    std::optional<Bound> bound;
    std::uint32_t goalIndex = kNone;
  };

  Result run(const Goal* goal) {
    start_ = std::chrono::steady_clock::now();
    arena_.resize(L_.words);
    L_.pack(p_.initial, arena_.data());
    parent_.push_back(kNone);
    via_.push_back(kNone);
    depth_.push_back(0);
    table_.insert(0, StateTable::hash(arena_.data(), L_.words));
    if (goal && goal->satisfied(Eval(L_, arena_.data()))) return {SearchOutcome::Kind::kReachable, {}, 0};

    std::size_t levelStart = 0, levelEnd = 1, depth = 0;
    while (levelStart < levelEnd) {
      const bool last = depth >= b_.maxDepth;
      for (std::size_t begin = levelStart; begin < levelEnd;) {
        std::size_t end = std::min(levelEnd, begin + kChunk * threads_);
        auto candidates = generate(begin, end, goal);
        for (auto& part : candidates) {
          for (const auto& c : part.items) {
            const Word* w = part.words.data() + c.offset;
            if (table_.contains(w, c.hash)) continue;
            if (last) return {SearchOutcome::Kind::kBoundExceeded, Bound::kDepth};
            if (count() >= b_.maxStates) return {SearchOutcome::Kind::kBoundExceeded, Bound::kStates};
            auto idx = static_cast<std::uint32_t>(count());
            arena_.insert(arena_.end(), w, w + L_.words);
            parent_.push_back(c.parent);
            via_.push_back(c.request);
            depth_.push_back(static_cast<std::uint32_t>(depth + 1));
            table_.insert(idx, c.hash);
            if (c.goal) return {SearchOutcome::Kind::kReachable, {}, idx};
          }
        }
        if (elapsedMs() > b_.maxMillis) return {SearchOutcome::Kind::kBoundExceeded, Bound::kTime};
        begin = end;
      }
      if (last) break;
      levelStart = levelEnd;
      levelEnd = count();
      ++depth;
    }
    return {SearchOutcome::Kind::kUnreachable, {}};
  }

  std::size_t count() const { return parent_.size(); }

  Plan planTo(std::uint32_t idx) const {
    Plan plan;
    for (std::uint32_t i = idx; parent_[i] != kNone; i = parent_[i]) {
      plan.requests.push_back(requests_[via_[i]].request);
    }
    std::reverse(plan.requests.begin(), plan.requests.end());
    return plan;
  }

  DirectState stateAt(std::size_t idx) const { return L_.unpack(arena_.data() + idx * L_.words); }
  std::size_t depthAt(std::size_t idx) const { return depth_[idx]; }

 private:
  static constexpr std::size_t kChunk = 2048;

  struct Candidate {
    std::uint32_t parent;
    std::uint32_t request;
    std::size_t offset;
    std::uint64_t hash;
    bool goal;
  };
  struct Part {
    std::vector<Candidate> items;
    std::vector<Word> words;
  };

  void buildRequests() {
    std::map<Request, RequestInstance> byRequest;
    auto add = [&](Request req, std::size_t bit, bool isAdd, int subject, std::size_t rule) {
      auto [it, fresh] = byRequest.try_emplace(req);
      if (fresh) it->second = RequestInstance{req, bit, isAdd, subject, {}};
      it->second.rules.push_back(rule);
    };
    for (std::size_t i = 0; i < p_.rules.size(); ++i) {
      const Rule& r = p_.rules.at(i);
      switch (r.relation) {
        case Relation::kCanAddU:
        case Relation::kCanDeleteU: {
          int k = L_.pair(r.attr, r.value);
          if (k < 0) break;
          bool isAdd = r.relation == Relation::kCanAddU;
          add(isAdd ? Request::addU(r.role, r.attr, r.value)
                    : Request::deleteU(r.role, r.attr, r.value),
              L_.userBit(k), isAdd, -1, i);
          break;
        }
        case Relation::kCanAddUG:
        case Relation::kCanDeleteUG: {
          int k = L_.pair(r.attr, r.value);
          if (k < 0) break;
          bool isAdd = r.relation == Relation::kCanAddUG;
          for (std::size_t g = 0; g < L_.ng; ++g) {
            int gi = static_cast<int>(g);
            add(isAdd ? Request::addUG(r.role, L_.groups[g], r.attr, r.value)
                      : Request::deleteUG(r.role, L_.groups[g], r.attr, r.value),
                L_.groupBit(gi, k), isAdd, gi, i);
          }
          break;
        }
        case Relation::kCanAssign:
        case Relation::kCanRemove: {
          auto it = L_.groupIndex.find(r.group);
          if (it == L_.groupIndex.end()) break;
          bool isAdd = r.relation == Relation::kCanAssign;
          add(isAdd ? Request::assign(r.role, r.group) : Request::remove(r.role, r.group),
              L_.memberBit(it->second), isAdd, -1, i);
          break;
        }
      }
    }
    for (auto& [req, inst] : byRequest) requests_.push_back(std::move(inst));
  }

  void expandRange(std::size_t begin, std::size_t end, const Goal* goal, Part& out) const {
    std::vector<Word> scratch(L_.words);
    for (std::size_t s = begin; s < end; ++s) {
      const Word* w = arena_.data() + s * L_.words;
      Eval eval(L_, w);
      for (std::size_t ri = 0; ri < requests_.size(); ++ri) {
        const auto& req = requests_[ri];
        if (eval.bit(req.bit) == req.add) continue;  // no-op
        bool authorized = false;
        for (std::size_t rule : req.rules) {
          if (eval.holds(compiled_[rule], req.subject)) {
            authorized = true;
            break;
          }
        }
        if (!authorized) continue;
        std::copy(w, w + L_.words, scratch.begin());
        scratch[req.bit / 64] ^= Word{1} << (req.bit % 64);
        std::uint64_t h = StateTable::hash(scratch.data(), L_.words);
        if (table_.contains(scratch.data(), h)) continue;
        bool isGoal = goal && goal->satisfied(Eval(L_, scratch.data()));
        out.items.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(ri),
                             out.words.size(), h, isGoal});
        out.words.insert(out.words.end(), scratch.begin(), scratch.end());
      }
    }
  }

  std::vector<Part> generate(std::size_t begin, std::size_t end, const Goal* goal) const {
    std::size_t n = end - begin;
    std::size_t workers = std::min<std::size_t>(threads_, std::max<std::size_t>(1, n / 64));
    std::vector<Part> parts(workers);
    if (workers == 1) {
      expandRange(begin, end, goal, parts[0]);
      return parts;
    }
    std::vector<std::thread> pool;
    std::size_t step = (n + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      std::size_t lo = begin + t * step, hi = std::min(end, lo + step);
      pool.emplace_back([this, lo, hi, goal, &parts, t] {
        if (lo < hi) expandRange(lo, hi, goal, parts[t]);
      });
    }
    for (auto& th : pool) th.join();
    return parts;
  }

  std::int64_t elapsedMs() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

  const ProblemInstance& p_;
  SearchBounds b_;
  unsigned threads_;
  Layout L_;
  std::vector<Compiled> compiled_;
  std::vector<RequestInstance> requests_;
  std::vector<Word> arena_;
  std::vector<std::uint32_t> parent_, via_, depth_;
  StateTable table_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchOutcome bfsSolve(const ProblemInstance& p, const ReachabilityQuery& q,
                       const SearchBounds& bounds, const SearchOptions& options) {
  Searcher searcher(p, bounds, options);
  Layout layout(p);
  Goal goal(layout, p, q);
  auto r = searcher.run(&goal);
  SearchOutcome out;
  out.kind = r.kind;
  out.bound = r.bound;
  out.statesExplored = searcher.count();
  if (r.kind == SearchOutcome::Kind::kReachable) out.plan = searcher.planTo(r.goalIndex);
  return out;
}

ReachableStates enumerateReachable(const ProblemInstance& p, const SearchBounds& bounds,
                                   const SearchOptions& options) {
  Searcher searcher(p, bounds, options);
  auto r = searcher.run(nullptr);
  ReachableStates out;
  out.exceeded = r.bound;
  for (std::size_t i = 0; i < searcher.count(); ++i) {
    out.depth.emplace(canonicalEncode(searcher.stateAt(i)), searcher.depthAt(i));
  }
  return out;
}

}  // namespace gurag
