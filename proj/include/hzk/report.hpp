#pragma once

#include <string>
#include <vector>

#include "hzk/json_io.hpp"

namespace hzk {

// One named identity with the outcome of its exact check; failures carry a
// serialized counterexample in the detail field.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failed_count() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }

  Json to_json() const {
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json j{{"name", c.name}, {"pass", c.pass}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      arr.push_back(std::move(j));
    }
    return Json{{"checks", arr},
                {"passed", static_cast<int>(checks.size()) - failed_count()},
                {"failed", failed_count()}};
  }
};

}  // namespace hzk
