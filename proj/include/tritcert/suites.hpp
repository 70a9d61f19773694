#pragma once

// Verification suites and reduction chains behind the command-line tool.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tritcert/gadgets.hpp"
#include "tritcert/json_io.hpp"
#include "tritcert/longcode.hpp"

namespace tritcert {

struct CheckRecord {
  std::string id;
  Json expected;
  Json observed;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteOptions {
  std::string suite = "all";
  int K = 2;
  int d = 2;
  int trials = 20;
  std::uint64_t seed = 1;
  double tolerance = kIdentityTolerance;
};

struct SuiteReport {
  std::string suite;
  SuiteOptions options;
  std::vector<CheckRecord> records;

  bool pass() const;
  /// Deterministic: no timing, keys in sorted order.
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws ContractError for an unknown suite or bad parameters and
/// CapacityError when K, d exceed the enumeration caps.
SuiteReport run_suite(const SuiteOptions& options);

/// A satisfiable label cover instance on |U| = |V| = 2 with every left
/// vertex joined to every right vertex, and a satisfying labeling.
struct PlantedLabelCover {
  LabelCoverInstance instance;
  Labeling labeling;
};
PlantedLabelCover planted_label_cover(int K, int d, std::mt19937_64& rng);

struct ReductionResult {
  Json instance;  // final instance, csp schema
  Json report;
};

/// Stage names: longcode-4nat (label cover input, first stage only),
/// 4nat-2nlin, 2nlin-labelcover, 4nat-labelcover. "->" may stand for "-".
/// thresholds, when given, are those of the instance entering the first
/// gadget stage; a leading longcode-4nat stage starts from (1, 2/3).
ReductionResult run_reduction(const Json& input, const std::vector<std::string>& chain,
                              std::optional<DecisionThresholds> thresholds);

}  // namespace tritcert
