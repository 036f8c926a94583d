#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vrs::tools {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty: every criterion
  std::uint64_t seed = 1;
};

inline constexpr int kCriterionCount = 10;

/// Runs the acceptance criteria in order; `on_result` sees each result as
/// soon as it is known.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [3] title (1.2 s): detail"
std::string format_line(const CriterionResult& r);

nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace vrs::tools
