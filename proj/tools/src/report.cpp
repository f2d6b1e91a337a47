#include "bwave/tools/report.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace bwave::tools {

bool SuiteResult::pass() const {
  if (cases.empty()) return false;
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

const CaseResult* SuiteResult::worst() const {
  const CaseResult* out = cases.empty() ? nullptr : &cases.front();
  double ratio = -1.0;
  for (const auto& c : cases) {
    if (c.pass) continue;
    const double r = c.bound != 0.0 ? std::abs(c.measured / c.bound) : std::abs(c.measured);
    if (r > ratio) {
      ratio = r;
      out = &c;
    }
  }
  return out;
}

std::string report_json(const std::string& suite, const std::vector<SuiteResult>& results) {
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& s : results)
    for (const auto& c : s.cases) {
      nlohmann::ordered_json item;
      item["name"] = s.name + "/" + c.name;
      item["status"] = c.pass ? "pass" : "fail";
      item["measured"] = c.measured;
      item["bound"] = c.bound;
      if (!c.detail.empty()) item["detail"] = c.detail;
      cases.push_back(item);
    }
  nlohmann::ordered_json out;
  out["suite"] = suite;
  out["cases"] = cases;
  return out.dump(2) + "\n";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bwave::tools
