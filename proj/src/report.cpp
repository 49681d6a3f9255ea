#include "bctx/report.hpp"

#include <algorithm>
#include <cstdio>

namespace bctx {

namespace {

void sort_by_name(std::vector<CheckReport>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
}

}  // namespace

std::string to_text(const Bindings& b) {
  std::string out;
  for (const auto& [k, v] : b) {
    if (!out.empty()) out += "; ";
    out += k + " = " + v;
  }
  return out;
}

std::string to_text(const CheckReport& r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f", r.elapsed_ms);
  std::string out = r.name + ": " + (r.pass ? "PASS" : "FAIL") + " (" + std::to_string(r.cases) + " cases, " + ms + " ms)";
  if (r.counterexample) out += "\n  counterexample: " + to_text(*r.counterexample);
  return out;
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["cases"] = r.cases;
  j["verdict"] = r.pass ? "pass" : "fail";
  if (r.counterexample) {
    nlohmann::ordered_json cx = nlohmann::ordered_json::object();
    for (const auto& [k, v] : *r.counterexample) cx[k] = v;
    j["counterexample"] = cx;
  }
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string structured(std::vector<CheckReport> reports) {
  sort_by_name(reports);
  std::string out;
  for (const auto& r : reports) out += to_json(r).dump() + "\n";
  return out;
}

std::string text_report(std::vector<CheckReport> reports) {
  sort_by_name(reports);
  std::string out;
  for (const auto& r : reports) out += to_text(r) + "\n";
  return out;
}

}  // namespace bctx
