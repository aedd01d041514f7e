#pragma once

// Seeded random instance generator and planner-vs-oracle cross-checking.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gurag/engine.hpp"

namespace gurag {

enum class FuzzClass { kNonNeg, kSrd, kAny };

std::string_view fuzzClassName(FuzzClass c);
std::optional<FuzzClass> parseFuzzClass(std::string_view name);

/// Generator constants. Instances are resampled until their whole reachable
/// space closes within oracleBounds, so every oracle answer is decisive.
struct FuzzShape {
  static constexpr std::size_t kMaxAttributes = 2;
  static constexpr std::size_t kMaxValues = 3;
  static constexpr std::size_t kMaxGroups = 3;
  static constexpr std::size_t kMaxRules = 10;
  static constexpr std::size_t kMaxLiterals = 2;
  static constexpr double kNonNegDeleteProbability = 0.12;
  static constexpr double kAnyDeleteProbability = 0.3;
  static constexpr double kNegationProbability = 0.3;
  static constexpr std::size_t kOracleDepth = 12;
  static constexpr std::size_t kOracleStates = 1 << 16;
};

/// Multi-line description of the constants above, for help output.
std::string fuzzShapeHelp();

struct FuzzCase {
  std::size_t index = 0;
  ProblemInstance instance;
  std::vector<ReachabilityQuery> queries;
};

FuzzCase generateCase(FuzzClass c, std::uint64_t seed, std::size_t index);

/// False if the rule set could induce a cycle in either planner ordering
/// graph: an abstract graph over rule targets, with edges from positive
/// conjuncts to targets and from targets to negated conjuncts.
bool orderingGraphsAcyclic(const RuleSet& rules);

struct FuzzRecord {
  std::size_t index = 0;
  std::size_t query = 0;
  QueryType type = QueryType::kStrict;
  std::string planner;  // engine name, or "declined"
  bool plannerReachable = false;
  bool oracleReachable = false;
  bool acyclic = true;
  bool planValid = true;  // every reachable plan re-validated
  std::string declineReason;
};

struct FuzzStats {
  FuzzClass cls = FuzzClass::kAny;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t queries = 0;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t declined = 0;
  std::size_t invalidPlans = 0;
  std::size_t cyclicInstances = 0;
  std::vector<FuzzRecord> records;
};

FuzzStats runFuzz(FuzzClass c, std::uint64_t seed, std::size_t count,
                  const SearchOptions& options = {});

}  // namespace gurag
