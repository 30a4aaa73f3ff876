#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace froblie {

using Json = nlohmann::ordered_json;

// One per-check record of a run. "inconclusive" is reserved for
// truncation-limited answers and does not fail a run.
struct CheckRecord {
  std::string check_id;
  std::string status;  // pass | fail | inconclusive
  Json numerics = Json::object();
  Json caps_used = Json::object();
  std::string paper_bound;  // empty when no paper-side constant applies
};

struct Report {
  std::string command;
  bool has_seed = false;
  std::uint64_t seed = 0;
  Json caps_used = Json::object();
  std::vector<CheckRecord> checks;

  void add(CheckRecord rec) { checks.push_back(std::move(rec)); }
  void add_pass(const std::string& id, Json numerics = Json::object());
  void add_check(const std::string& id, bool ok, Json numerics = Json::object());

  bool any_failure() const;
  int exit_code() const { return any_failure() ? 1 : 0; }

  // checks sorted by check_id, fixed key order, newline-terminated
  std::string to_json() const;
};

}  // namespace froblie
