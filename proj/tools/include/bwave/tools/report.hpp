#pragma once

#include <string>
#include <vector>

namespace bwave::tools {

struct CaseResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;
  double seconds = 0.0;
  bool pass() const;
  /// The failing case with the largest measured/bound ratio, or the first case.
  const CaseResult* worst() const;
};

/// {"suite": name, "cases": [{"name", "status", "measured", "bound"}]}
std::string report_json(const std::string& suite, const std::vector<SuiteResult>& results);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace bwave::tools
