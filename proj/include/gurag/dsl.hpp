#pragma once

// Line-oriented text format for instances, queries and plans.
//
//   scheme G1plus
//   attr skills scope { c, java }
//   group G1
//   senior G1 > G2
//   role ar
//   user {
//     skills = { c }
//     groups = { G1 }
//   }
//   groupstate G2 {
//     roomAcc = { 3.02 }
//   }
//   rules {
//     rule canAddU skills : ar , c in direct(skills) -> java
//     rule canAssign : ar , not(G3 in directUg) -> G2
//   }
//   query strict { e_skills(u) = { c, java } }
//   plan {
//     addU(ar,skills,java);
//   }

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gurag/transition.hpp"

namespace gurag {

struct Diagnostic {
  enum class Severity { kError, kWarning };

  Severity severity = Severity::kError;
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based, in bytes
  std::string message;
  std::string code;        // E001 ... / W001 ...

  bool isError() const noexcept { return severity == Severity::kError; }
};

/// "file:line:col: error E010: message"
std::string formatDiagnostic(const Diagnostic& d, std::string_view source);

struct SourceDocument {
  std::string text;
  ProblemInstance instance;
  std::vector<ReachabilityQuery> queries;
  std::vector<Plan> plans;
};

struct ParseResult {
  std::optional<SourceDocument> document;  // set iff there are no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return document.has_value(); }
};

/// Never throws on malformed text; every problem becomes a diagnostic.
ParseResult parseInstance(std::string_view text);

std::string serializeInstance(const ProblemInstance& p,
                              const std::vector<ReachabilityQuery>& queries = {},
                              const std::vector<Plan>& plans = {});

std::string serializeDocument(const SourceDocument& doc);

/// Precondition in rule syntax, e.g. "c in direct(skills) and not(G1 in directUg)".
std::string toString(const Precondition& pre);

std::string toString(const ReachabilityQuery& q);

}  // namespace gurag
