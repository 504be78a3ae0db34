#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padicdyn {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// One "PASS name: detail" or "FAIL name: detail" line per check.
  std::string to_string() const;
};

/// newton, disk, pto1, radius, witness, bdry.
const std::vector<std::string>& suite_names();

/// Runs one suite with a fixed seed; InvalidArgument for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

}  // namespace padicdyn
