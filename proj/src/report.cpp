#include "cybeforge/report.hpp"

#include <algorithm>

namespace cybeforge {

std::string status_name(Status s) {
  switch (s) {
  case Status::pass:
    return "pass";
  case Status::fail:
    return "fail";
  case Status::info:
    return "info";
  case Status::skipped:
    return "skipped";
  }
  return "?";
}

void Report::add(std::string name, bool ok, nlohmann::json witness, std::string detail) {
  if (!ok && witness.is_null()) {
    witness = {{"detail", detail.empty() ? "identity failed; no finer witness available" : detail}};
  }
  checks_.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(witness), std::move(detail)});
}

void Report::info(std::string name, std::string detail, nlohmann::json data) {
  checks_.push_back({std::move(name), Status::info, std::move(data), std::move(detail)});
}

void Report::merge(const Report &other, const std::string &prefix) {
  for (auto c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

bool Report::ok() const {
  return std::none_of(checks_.begin(), checks_.end(), [](const Check &c) { return c.status == Status::fail; });
}

const Check *Report::find(const std::string &name) const {
  for (const auto &c : checks_) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

const Check *Report::first_failure() const {
  for (const auto &c : checks_) {
    if (c.status == Status::fail) {
      return &c;
    }
  }
  return nullptr;
}

nlohmann::json Report::to_json() const {
  std::vector<const Check *> sorted;
  for (const auto &c : checks_) {
    sorted.push_back(&c);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Check *a, const Check *b) { return a->name < b->name; });
  auto arr = nlohmann::json::array();
  for (const auto *c : sorted) {
    nlohmann::json j = {{"name", c->name}, {"status", status_name(c->status)}};
    if (!c->witness.is_null()) {
      j["witness"] = c->witness;
    }
    if (!c->detail.empty()) {
      j["detail"] = c->detail;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

} // namespace cybeforge
