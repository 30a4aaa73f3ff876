#include "froblie/report.hpp"

#include <algorithm>

namespace froblie {

void Report::add_pass(const std::string& id, Json numerics) {
  add(CheckRecord{id, "pass", std::move(numerics)});
}

void Report::add_check(const std::string& id, bool ok, Json numerics) {
  add(CheckRecord{id, ok ? "pass" : "fail", std::move(numerics)});
}

bool Report::any_failure() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.status == "fail"; });
}

std::string Report::to_json() const {
  Json doc;
  doc["command"] = command;
  if (has_seed) doc["seed"] = seed;
  if (!caps_used.empty()) doc["caps_used"] = caps_used;
  std::vector<const CheckRecord*> ordered;
  for (const auto& c : checks) ordered.push_back(&c);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const CheckRecord* a, const CheckRecord* b) {
                     return a->check_id < b->check_id;
                   });
  Json arr = Json::array();
  for (const CheckRecord* c : ordered) {
    Json rec;
    rec["check_id"] = c->check_id;
    rec["status"] = c->status;
    if (!c->numerics.empty()) rec["numerics"] = c->numerics;
    if (!c->caps_used.empty()) rec["caps_used"] = c->caps_used;
    if (!c->paper_bound.empty()) rec["paper_bound_if_any"] = c->paper_bound;
    arr.push_back(std::move(rec));
  }
  doc["checks"] = std::move(arr);
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  for (const auto& c : checks) {
    if (c.status == "pass") ++pass;
    else if (c.status == "fail") ++fail;
    else ++inconclusive;
  }
  doc["summary"] = Json{{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}};
  return doc.dump(2) + "\n";
}

}  // namespace froblie
