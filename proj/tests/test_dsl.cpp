#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "gurag/dsl.hpp"
#include "gurag/fuzz.hpp"
#include "support.hpp"

namespace gurag {
namespace {

using namespace gurag::testing;
namespace fs = std::filesystem;

std::vector<fs::path> filesIn(const std::string& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dataPath(dir))) {
    if (e.path().extension() == ".gurag") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Golden, SerializeParseIsIdentity) {
  auto files = filesIn("golden");
  ASSERT_GE(files.size(), 7u);
  for (const auto& f : files) {
    std::string text = readFile(f.string());
    SourceDocument doc = parseOrThrow(text);
    EXPECT_EQ(serializeDocument(doc), text) << f.filename();
  }
}

TEST(Golden, ParseSerializeIsIdentity) {
  for (const auto& f : filesIn("golden")) {
    SourceDocument doc = parseOrThrow(readFile(f.string()));
    SourceDocument again = parseOrThrow(serializeDocument(doc));
    EXPECT_EQ(again.instance, doc.instance) << f.filename();
    EXPECT_EQ(again.queries, doc.queries);
    EXPECT_EQ(again.plans, doc.plans);
  }
}

TEST(Golden, FixturesCanonicaliseToGolden) {
  for (const auto& f : filesIn("fixtures")) {
    SourceDocument doc = parseOrThrow(readFile(f.string()));
    EXPECT_EQ(serializeDocument(doc), readFile(dataPath("golden/" + f.filename().string())))
        << f.filename();
  }
}

TEST(Serialize, DeclarationOrderDoesNotMatter) {
  auto a = parseOrThrow(R"(
role r2
role r1
group B
group A
attr z scope { 2, 1 }
attr y scope { q }
rules {
}
)");
  auto b = parseOrThrow(R"(
attr y scope { q }
attr z scope { 1, 2 }
group A
group B
role r1
role r2
rules {
}
)");
  EXPECT_EQ(serializeDocument(a), serializeDocument(b));
}

TEST(Serialize, EmptyRulesBlockIsKept) {
  auto doc = parseOrThrow("attr a scope { x }\n");
  EXPECT_NE(serializeDocument(doc).find("rules {\n}\n"), std::string::npos);
}

TEST(Serialize, RandomInstancesRoundTrip) {
  for (std::size_t i = 0; i < 200; ++i) {
    FuzzCase fc = generateCase(FuzzClass::kAny, 9, i);
    std::string text = serializeInstance(fc.instance, fc.queries);
    SourceDocument doc = parseOrThrow(text);
    EXPECT_EQ(doc.instance.rules, fc.instance.rules);
    EXPECT_EQ(doc.instance.initial, fc.instance.initial);
    EXPECT_EQ(doc.queries, fc.queries);
    EXPECT_EQ(serializeDocument(doc), text);
  }
}

TEST(Parse, BobEffectiveRoomAccess) {
  auto doc = fixture("bob.gurag");
  EXPECT_EQ(effectiveUserAttr(doc.instance.initial, doc.instance.hierarchy, att("roomAcc")),
            vals({"1.2", "2.03", "2.04", "3.02"}));
}

TEST(Parse, UnknownGroupHasItsLine) {
  ParseResult r = parseInstance("attr a scope { x }\nrole r\nrules {\n  rule canAssign : r , true -> G9\n}\n");
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].code, "E012");
  EXPECT_EQ(r.diagnostics[0].line, 4u);
  EXPECT_EQ(r.diagnostics[0].column, 32u);
}

TEST(Parse, ValueOutsideScopeInRule) {
  ParseResult r = parseInstance("attr a scope { x }\nrole r\nrules {\n  rule canAddU a : r , true -> y\n}\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].code, "E011");
}

TEST(Parse, DeclaredSchemeTooLowWarns) {
  ParseResult r = parseInstance(
      "scheme G0\nattr a scope { x }\ngroup G\nrole r\nrules {\n  rule canAssign : r , true -> G\n}\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, "W001");
  EXPECT_FALSE(r.diagnostics[0].isError());
}

TEST(Parse, ReflexiveEdgeWarns) {
  ParseResult r = parseInstance("group G\nsenior G > G\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, "W002");
  EXPECT_TRUE(r.document->instance.hierarchy.seniority().empty());
}

TEST(Parse, CommentsAndBlankLinesAreIgnored) {
  auto doc = parseOrThrow("# header\n\nattr a scope { x } # trailing\n");
  EXPECT_EQ(doc.instance.scopes.size(), 1u);
}

TEST(Parse, ReportsSeveralErrors) {
  ParseResult r = parseInstance("attr a scope { x }\nrole $\ngroup G\ngroup ,\n");
  ASSERT_FALSE(r.ok());
  std::set<std::pair<std::string, std::size_t>> seen;
  for (const auto& d : r.diagnostics) seen.insert({d.code, d.line});
  EXPECT_TRUE(seen.contains({"E001", 2}));
  EXPECT_TRUE(seen.contains({"E002", 4}));
}

TEST(FormatDiagnostic, FileLineColumn) {
  Diagnostic d;
  d.line = 3;
  d.column = 7;
  d.code = "E010";
  d.message = "unknown attribute 'b'";
  EXPECT_EQ(formatDiagnostic(d, "x.gurag"), "x.gurag:3:7: error E010: unknown attribute 'b'");
}

// The offending token starts at (line, column), or the position is the end
// of input.
void expectPositionInside(const std::string& text, const Diagnostic& d, const std::string& name) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  ASSERT_GE(d.line, 1u) << name;
  ASSERT_GE(d.column, 1u) << name;
  ASSERT_LE(d.line, lines.size()) << name;
  const std::string& line = lines[d.line - 1];
  if (d.column == line.size() + 1) return;  // end of line or input
  ASSERT_LE(d.column, line.size()) << name;
  EXPECT_NE(line[d.column - 1], ' ') << name;
}

TEST(Malformed, EveryFileGivesThePinnedDiagnostic) {
  std::map<std::string, std::tuple<std::string, std::size_t, std::size_t>> expected;
  std::istringstream in(readFile(dataPath("malformed/expected.txt")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string file, code;
    std::size_t l = 0, c = 0;
    ls >> file >> code >> l >> c;
    expected[file] = {code, l, c};
  }
  auto files = filesIn("malformed");
  ASSERT_EQ(files.size(), 50u);
  ASSERT_EQ(expected.size(), 50u);
  for (const auto& f : files) {
    std::string text = readFile(f.string());
    ParseResult r;
    ASSERT_NO_THROW(r = parseInstance(text)) << f.filename();
    EXPECT_FALSE(r.ok()) << f.filename();
    ASSERT_FALSE(r.diagnostics.empty()) << f.filename();
    const Diagnostic& d = r.diagnostics.front();
    auto [code, l, c] = expected.at(f.filename().string());
    EXPECT_EQ(d.code, code) << f.filename();
    EXPECT_EQ(d.line, l) << f.filename();
    EXPECT_EQ(d.column, c) << f.filename();
    for (const auto& diag : r.diagnostics) expectPositionInside(text, diag, f.filename());
  }
}

TEST(Malformed, RandomCorruptionNeverThrows) {
  std::mt19937 rng(5);
  auto golden = filesIn("golden");
  const std::string noise = "{}(),=>:;-# \n@$xyzG9";
  for (int i = 0; i < 2000; ++i) {
    std::string text = readFile(golden[rng() % golden.size()].string());
    int edits = 1 + rng() % 4;
    for (int e = 0; e < edits && !text.empty(); ++e) {
      std::size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0: text.erase(pos, 1 + rng() % 5); break;
        case 1: text.insert(pos, 1, noise[rng() % noise.size()]); break;
        default: text[pos] = noise[rng() % noise.size()]; break;
      }
    }
    ParseResult r;
    ASSERT_NO_THROW(r = parseInstance(text)) << text;
    if (!r.ok()) {
      bool anyError = false;
      for (const auto& d : r.diagnostics) {
        anyError |= d.isError();
        expectPositionInside(text, d, "corrupted #" + std::to_string(i));
      }
      EXPECT_TRUE(anyError);
    }
  }
}

}  // namespace
}  // namespace gurag
