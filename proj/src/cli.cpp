#include "gurag/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

#include "gurag/dsl.hpp"
#include "gurag/engine.hpp"
#include "gurag/fuzz.hpp"

namespace gurag {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "gurag-reach/report/v1";

struct Failure {
  int code;
  std::string message;
  std::string diagnostics;  // already formatted, one per line
};

bool colorEnabled() {
  const char* v = std::getenv("GURAG_REACH_COLOR");
  return v != nullptr && std::string_view(v) == "1";
}

std::string paint(const std::string& s, const char* ansi) {
  if (!colorEnabled()) return s;
  return std::string("\x1b[") + ansi + "m" + s + "\x1b[0m";
}

std::string readSource(const std::string& path, const std::optional<std::string>& input) {
  std::stringstream buf;
  if (path == "-") {
    if (input) return *input;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot read '" + path + "'"};
  buf << in.rdbuf();
  return buf.str();
}

/// Parses and validates a file; diagnostics go to err.
SourceDocument load(const std::string& path, const std::optional<std::string>& input,
                    std::string& err) {
  ParseResult r = parseInstance(readSource(path, input));
  for (const auto& d : r.diagnostics) {
    std::string line = formatDiagnostic(d, path);
    err += (d.isError() ? paint(line, "31") : paint(line, "33")) + "\n";
  }
  if (!r.ok()) throw Failure{kExitInput, "", err};
  auto violations = validateInstance(r.document->instance);
  for (const auto& q : r.document->queries) {
    auto more = validateQuery(r.document->instance, q);
    violations.insert(violations.end(), more.begin(), more.end());
  }
  if (!violations.empty()) {
    for (const auto& v : violations) err += path + ": error " + v.code + ": " + v.message + "\n";
    throw Failure{kExitInput, "", err};
  }
  return std::move(*r.document);
}

const ReachabilityQuery& pickQuery(const SourceDocument& doc, std::size_t n) {
  if (n >= doc.queries.size()) {
    throw Failure{kExitInput, "query " + std::to_string(n) + " does not exist (file has " +
                                  std::to_string(doc.queries.size()) + ")"};
  }
  return doc.queries[n];
}

Json planJson(const Plan& plan) {
  Json a = Json::array();
  for (const auto& r : plan.requests) a.push_back(toString(r));
  return a;
}

std::string planText(const Plan& plan) {
  std::string out = "plan (" + std::to_string(plan.size()) +
                    (plan.size() == 1 ? " step)" : " steps)") + ":\n";
  for (std::size_t i = 0; i < plan.size(); ++i) {
    out += "  " + std::to_string(i + 1) + ". " + toString(plan.requests[i]) + "\n";
  }
  return out;
}

int exitFor(SolveReport::Outcome o) {
  switch (o) {
    case SolveReport::Outcome::kReachable:
      return kExitOk;
    case SolveReport::Outcome::kUnreachable:
      return kExitNegative;
    case SolveReport::Outcome::kBoundExceeded:
      return kExitBound;
  }
  return kExitInternal;
}

std::string outcomeText(SolveReport::Outcome o) {
  std::string s(outcomeName(o));
  switch (o) {
    case SolveReport::Outcome::kReachable:
      return paint(s, "32");
    case SolveReport::Outcome::kUnreachable:
      return paint(s, "31");
    default:
      return paint(s, "33");
  }
}

struct Options {
  std::string file;
  std::string format = "text";
  std::size_t query = 0;
  std::size_t plan = 0;
  std::string engine = "auto";
  SearchBounds bounds;
  unsigned threads = 1;
  bool noTiming = false;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::string fuzzClass = "any";
  std::optional<std::size_t> emit;
  std::optional<std::string> input;  // replaces stdin for the '-' path
};

Json baseReport(const char* command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

CommandOutcome doClassify(const Options& o) {
  CommandOutcome out;
  SourceDocument doc = load(o.file, o.input, out.err);
  RestrictionFlags f = checkRestrictions(doc.instance.rules);
  if (o.format == "json") {
    Json j = baseReport("classify");
    j["level"] = schemeLevelName(f.instanceLevel);
    j["declaredLevel"] = doc.instance.declaredLevel
                             ? Json(schemeLevelName(*doc.instance.declaredLevel))
                             : Json(nullptr);
    j["restrictions"] = {{"noNegation", f.noNegation},
                         {"noDeletion", f.noDeletion},
                         {"singleRuleDirect", f.singleRuleDirect}};
    j["rules"] = doc.instance.rules.size();
    out.out = render(j);
  } else {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out.out = "level: " + std::string(schemeLevelName(f.instanceLevel)) + "\n" +
              "no negation: " + yn(f.noNegation) + "\n" +
              "no deletion: " + yn(f.noDeletion) + "\n" +
              "single rule direct: " + yn(f.singleRuleDirect) + "\n";
  }
  return out;
}

CommandOutcome reportSolve(const char* command, const Options& o, std::size_t queryIndex,
                           SolveReport r, std::string err) {
  CommandOutcome out;
  out.err = std::move(err);
  if (o.noTiming) r.elapsedMs = 0;
  if (o.format == "json") {
    Json j = baseReport(command);
    j["query"] = queryIndex;
    j["engine"] = engineName(r.engine);
    j["fallbackFrom"] = r.fallbackFrom ? Json(engineName(*r.fallbackFrom)) : Json(nullptr);
    j["outcome"] = outcomeName(r.outcome);
    j["plan"] = r.outcome == SolveReport::Outcome::kReachable ? planJson(r.plan) : Json(nullptr);
    j["reason"] = r.reason.empty() ? Json(nullptr) : Json(r.reason);
    j["detail"] = r.detail.empty() ? Json(nullptr) : Json(r.detail);
    Json discarded = Json::array();
    for (const auto& g : r.discardedGroups) discarded.push_back(g.str());
    j["discardedGroups"] = discarded;
    j["statesExplored"] = r.statesExplored;
    j["elapsedMs"] = r.elapsedMs;
    out.out = render(j);
  } else {
    std::string s = "engine: " + std::string(engineName(r.engine));
    if (r.fallbackFrom) s += " (after " + std::string(engineName(*r.fallbackFrom)) + ")";
    s += "\noutcome: " + outcomeText(r.outcome) + "\n";
    if (r.outcome == SolveReport::Outcome::kReachable) {
      s += planText(r.plan);
    } else {
      s += "reason: " + r.reason + "\n";
      if (!r.detail.empty()) s += "detail: " + r.detail + "\n";
    }
    if (!r.discardedGroups.empty()) {
      s += "discarded cyclic groups:";
      for (const auto& g : r.discardedGroups) s += " " + g.str();
      s += "\n";
    }
    if (r.engine == Engine::kBfs) s += "states explored: " + std::to_string(r.statesExplored) + "\n";
    if (!o.noTiming) s += "elapsed: " + std::to_string(r.elapsedMs) + " ms\n";
    out.out = s;
  }
  out.exitCode = exitFor(r.outcome);
  return out;
}

CommandOutcome doSolve(const Options& o, bool oracle) {
  std::string err;
  SourceDocument doc = load(o.file, o.input, err);
  const ReachabilityQuery& q = pickQuery(doc, o.query);
  Engine engine = Engine::kBfs;
  if (!oracle) {
    auto e = parseEngine(o.engine);
    if (!e) throw Failure{kExitInput, "unknown engine '" + o.engine + "'"};
    engine = *e;
  }
  SolveReport r = solve(doc.instance, q, engine, o.bounds, SearchOptions{o.threads});
  if (r.outcome == SolveReport::Outcome::kReachable &&
      !isValid(validatePlan(doc.instance, r.plan, q))) {
    throw InvariantFailure(std::string(engineName(r.engine)) +
                           " returned a plan that does not validate");
  }
  return reportSolve(oracle ? "oracle" : "solve", o, o.query, std::move(r), std::move(err));
}

CommandOutcome doValidate(const Options& o) {
  CommandOutcome out;
  SourceDocument doc = load(o.file, o.input, out.err);
  const ReachabilityQuery& q = pickQuery(doc, o.query);
  if (o.plan >= doc.plans.size()) {
    throw Failure{kExitInput, "plan " + std::to_string(o.plan) + " does not exist (file has " +
                                  std::to_string(doc.plans.size()) + ")"};
  }
  const Plan& plan = doc.plans[o.plan];
  for (const auto& req : plan.requests) {
    auto v = validateRequest(doc.instance, req);
    if (!v.empty()) throw Failure{kExitInput, v.front().message};
  }
  PlanVerdict verdict = validatePlan(doc.instance, plan, q);
  Json j = baseReport("validate");
  j["query"] = o.query;
  j["plan"] = o.plan;
  std::string text;
  if (const auto* ok = std::get_if<PlanValid>(&verdict)) {
    j["outcome"] = "valid";
    Json fired = Json::array();
    for (auto id : ok->firedRules) fired.push_back(id);
    j["firedRules"] = fired;
    text = "outcome: " + paint("valid", "32") + "\n";
    for (std::size_t i = 0; i < plan.size(); ++i) {
      text += "  " + std::to_string(i + 1) + ". " + toString(plan.requests[i]) + "  [rule " +
              std::to_string(ok->firedRules[i]) + "]\n";
    }
    out.exitCode = kExitOk;
  } else if (const auto* bad = std::get_if<PlanInvalidAt>(&verdict)) {
    j["outcome"] = "invalid";
    j["failedStep"] = bad->index;
    j["reason"] = bad->denial.reason == Denial::Reason::kNoMatchingRule ? "no-matching-rule"
                                                                          : "precondition-failed";
    j["detail"] = bad->denial.describe();
    text = "outcome: " + paint("invalid", "31") + "\nstep " + std::to_string(bad->index) + ": " +
           bad->denial.describe() + "\n";
    out.exitCode = kExitNegative;
  } else {
    j["outcome"] = "invalid";
    j["failedStep"] = nullptr;
    j["reason"] = "query-unsatisfied";
    j["detail"] = "every request is authorized but the final state does not satisfy the query";
    text = "outcome: " + paint("invalid", "31") +
           "\nevery request is authorized but the final state does not satisfy the query\n";
    out.exitCode = kExitNegative;
  }
  out.out = o.format == "json" ? render(j) : text;
  return out;
}

CommandOutcome doFmt(const Options& o) {
  CommandOutcome out;
  ParseResult r = parseInstance(readSource(o.file, o.input));
  for (const auto& d : r.diagnostics) out.err += formatDiagnostic(d, o.file) + "\n";
  if (!r.ok()) {
    out.exitCode = kExitInput;
    return out;
  }
  out.out = serializeDocument(*r.document);
  return out;
}

CommandOutcome doFuzz(const Options& o) {
  CommandOutcome out;
  auto cls = parseFuzzClass(o.fuzzClass);
  if (!cls) throw Failure{kExitInput, "unknown fuzz class '" + o.fuzzClass + "'"};
  if (o.emit) {
    FuzzCase fc = generateCase(*cls, o.seed, *o.emit);
    out.out = serializeInstance(fc.instance, fc.queries);
    return out;
  }
  auto start = std::chrono::steady_clock::now();
  FuzzStats s = runFuzz(*cls, o.seed, o.count, SearchOptions{o.threads});
  std::int64_t ms = o.noTiming ? 0
                               : std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
  std::size_t decided = s.agreements + s.disagreements;
  double rate = decided == 0 ? 1.0 : static_cast<double>(s.agreements) / decided;
  if (o.format == "json") {
    Json j = baseReport("fuzz");
    j["class"] = fuzzClassName(s.cls);
    j["seed"] = s.seed;
    j["instances"] = s.instances;
    j["queries"] = s.queries;
    j["agreements"] = s.agreements;
    j["disagreements"] = s.disagreements;
    j["declined"] = s.declined;
    j["invalidPlans"] = s.invalidPlans;
    j["cyclicInstances"] = s.cyclicInstances;
    j["agreementRate"] = rate;
    Json list = Json::array();
    for (const auto& r : s.records) {
      if (r.planner == "declined" || r.plannerReachable == r.oracleReachable) continue;
      list.push_back({{"instance", r.index},
                      {"query", r.query},
                      {"type", queryTypeName(r.type)},
                      {"planner", r.planner},
                      {"plannerReachable", r.plannerReachable},
                      {"oracleReachable", r.oracleReachable},
                      {"acyclic", r.acyclic}});
    }
    j["disagreementList"] = list;
    j["elapsedMs"] = ms;
    out.out = render(j);
  } else {
    std::ostringstream t;
    t << "class: " << fuzzClassName(s.cls) << "\nseed: " << s.seed
      << "\ninstances: " << s.instances << "\nqueries: " << s.queries
      << "\nagreements: " << s.agreements << "\ndisagreements: " << s.disagreements
      << "\ndeclined: " << s.declined << "\ninvalid plans: " << s.invalidPlans
      << "\ncyclic instances: " << s.cyclicInstances << "\n";
    for (const auto& r : s.records) {
      if (r.planner == "declined" || r.plannerReachable == r.oracleReachable) continue;
      t << "  disagreement: instance " << r.index << " query " << r.query << " ("
        << queryTypeName(r.type) << ") planner " << r.planner << " says "
        << (r.plannerReachable ? "reachable" : "unreachable") << ", oracle says "
        << (r.oracleReachable ? "reachable" : "unreachable")
        << (r.acyclic ? "" : " [cyclic]") << "\n";
    }
    if (!o.noTiming) t << "elapsed: " << ms << " ms\n";
    out.out = t.str();
  }
  out.exitCode = (s.disagreements == 0 && s.invalidPlans == 0) ? kExitOk : kExitNegative;
  return out;
}

void addBounds(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-depth", o.bounds.maxDepth, "Longest plan the search considers")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-states", o.bounds.maxStates, "Distinct states before giving up")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-ms", o.bounds.maxMillis, "Wall-clock budget in milliseconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Worker threads for the search")
      ->check(CLI::PositiveNumber);
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& argv, std::optional<std::string> input) {
  Options o;
  o.input = std::move(input);
  CLI::App app{"Reachability analysis for attribute and group administration policies",
               "gurag-reach"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timing", o.noTiming, "Omit wall-clock figures (reproducible reports)");

  auto* classify = app.add_subcommand("classify", "Print the instance level and restriction flags");
  classify->add_option("file", o.file, "Instance file ('-' for stdin)")->required();

  auto* solveCmd = app.add_subcommand("solve", "Decide a query and print a plan or the reason");
  solveCmd->add_option("file", o.file, "Instance file ('-' for stdin)")->required();
  solveCmd->add_option("--query", o.query, "Query index (0-based)");
  solveCmd->add_option("--engine", o.engine, "auto, nonneg, srd or bfs")
      ->check(CLI::IsMember({"auto", "nonneg", "srd", "bfs"}));
  addBounds(solveCmd, o);

  auto* validate = app.add_subcommand("validate", "Replay a plan from the file against a query");
  validate->add_option("file", o.file, "Instance file ('-' for stdin)")->required();
  validate->add_option("--plan", o.plan, "Plan index (0-based)");
  validate->add_option("--query", o.query, "Query index (0-based)");

  auto* oracle = app.add_subcommand("oracle", "Decide a query by exhaustive search");
  oracle->add_option("file", o.file, "Instance file ('-' for stdin)")->required();
  oracle->add_option("--query", o.query, "Query index (0-based)");
  addBounds(oracle, o);

  auto* fmt = app.add_subcommand("fmt", "Print the canonical form of a file");
  fmt->add_option("file", o.file, "Instance file ('-' for stdin)")->required();

  auto* fuzz = app.add_subcommand("fuzz", "Cross-check a planner against the oracle on random instances");
  fuzz->footer(fuzzShapeHelp());
  fuzz->add_option("--seed", o.seed, "Generator seed");
  fuzz->add_option("--count", o.count, "Number of instances");
  fuzz->add_option("--class", o.fuzzClass, "nonneg, srd or any")
      ->check(CLI::IsMember({"nonneg", "srd", "any"}));
  fuzz->add_option("--emit", o.emit, "Print instance N instead of running the check");
  fuzz->add_option("--threads", o.threads, "Worker threads for the oracle")
      ->check(CLI::PositiveNumber);

  CommandOutcome result;
  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exitCode = code == 0 ? kExitOk : kExitInput;
    return result;
  }

  try {
    if (classify->parsed()) return doClassify(o);
    if (solveCmd->parsed()) return doSolve(o, false);
    if (oracle->parsed()) return doSolve(o, true);
    if (validate->parsed()) return doValidate(o);
    if (fmt->parsed()) return doFmt(o);
    if (fuzz->parsed()) return doFuzz(o);
  } catch (const Failure& f) {
    result.exitCode = f.code;
    result.err = f.diagnostics;
    if (!f.message.empty()) result.err += "error: " + f.message + "\n";
    return result;
  } catch (const RestrictionViolation& e) {
    result.exitCode = kExitRestriction;
    result.err = "error: engine not applicable: " + std::string(e.what()) + "\n";
    return result;
  } catch (const InputError& e) {
    result.exitCode = kExitInput;
    result.err = "error: " + std::string(e.what()) + "\n";
    return result;
  } catch (const std::exception& e) {
    result.exitCode = kExitInternal;
    result.err = "internal error: " + std::string(e.what()) + "\n";
    return result;
  }
  result.exitCode = kExitInput;
  return result;
}

}  // namespace gurag
