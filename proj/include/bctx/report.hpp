#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bctx {

/// Variable and context bindings of a failing case, in surface syntax.
using Bindings = std::vector<std::pair<std::string, std::string>>;

struct CheckReport {
  std::string name;
  std::size_t cases = 0;
  bool pass = true;
  std::optional<Bindings> counterexample;
  double elapsed_ms = 0;
};

std::string to_text(const Bindings& b);
std::string to_text(const CheckReport& r);
nlohmann::ordered_json to_json(const CheckReport& r);

/// One JSON object per line, records sorted by name.
std::string structured(std::vector<CheckReport> reports);
/// One line per record, sorted by name.
std::string text_report(std::vector<CheckReport> reports);

}  // namespace bctx
