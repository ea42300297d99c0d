#ifndef CYBEFORGE_REPORT_HPP
#define CYBEFORGE_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace cybeforge {

enum class Status { pass, fail, info, skipped };

std::string status_name(Status s);

struct Check {
  std::string name;
  Status status = Status::pass;
  nlohmann::json witness; ///< null when absent
  std::string detail;
};

/// Ordered list of named checks. A report passes when no check failed.
class Report {
public:
  void add(std::string name, bool ok, nlohmann::json witness = nullptr, std::string detail = {});
  void add(Check c) { checks_.push_back(std::move(c)); }
  void info(std::string name, std::string detail, nlohmann::json data = nullptr);
  void merge(const Report &other, const std::string &prefix = {});

  bool ok() const;
  const std::vector<Check> &checks() const { return checks_; }
  const Check *find(const std::string &name) const;
  /// First failed check, or nullptr.
  const Check *first_failure() const;

  /// Checks sorted by name.
  nlohmann::json to_json() const;

private:
  std::vector<Check> checks_;
};

} // namespace cybeforge

#endif
