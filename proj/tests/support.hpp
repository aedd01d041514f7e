#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gurag/dsl.hpp"

namespace gurag::testing {

inline std::string dataPath(const std::string& rel) {
  return std::string(GURAG_TEST_DATA) + "/" + rel;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SourceDocument parseOrThrow(std::string_view text) {
  ParseResult r = parseInstance(text);
  if (!r.ok()) {
    std::string msg = "parse failed:";
    for (const auto& d : r.diagnostics) msg += "\n" + formatDiagnostic(d, "<text>");
    throw std::runtime_error(msg);
  }
  return std::move(*r.document);
}

inline SourceDocument fixture(const std::string& name) {
  return parseOrThrow(readFile(dataPath("fixtures/" + name)));
}

inline AttributeName att(const char* s) { return AttributeName(s); }
inline AtomicValue val(const char* s) { return AtomicValue(s); }
inline GroupId grp(const char* s) { return GroupId(s); }
inline AdminRole role(const char* s) { return AdminRole(s); }

inline ValueSet vals(std::initializer_list<const char*> xs) {
  ValueSet out;
  for (const char* x : xs) out.insert(AtomicValue(x));
  return out;
}

inline GroupSet grps(std::initializer_list<const char*> xs) {
  GroupSet out;
  for (const char* x : xs) out.insert(GroupId(x));
  return out;
}

inline std::string render(const Plan& plan) {
  std::string out;
  for (const auto& r : plan.requests) {
    if (!out.empty()) out += "; ";
    out += toString(r);
  }
  return out;
}

}  // namespace gurag::testing
