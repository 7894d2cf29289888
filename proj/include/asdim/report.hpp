#pragma once

// Validation results are values, not exceptions: a report collects every
// checked condition with a witness string for the failures. An empty failure
// list is the definition of "valid".

#include <string>
#include <vector>

namespace asdim {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // offending indices / points / values, empty on pass
};

class ValidationReport {
 public:
  void add(std::string name, bool pass, std::string witness = "") {
    checks_.push_back(CheckResult{std::move(name), pass, std::move(witness)});
  }
  void add_failure(std::string name, std::string witness) {
    add(std::move(name), false, std::move(witness));
  }
  void merge(const ValidationReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  bool ok() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  std::vector<CheckResult> failures() const {
    std::vector<CheckResult> out;
    for (const auto& c : checks_)
      if (!c.pass) out.push_back(c);
    return out;
  }

  const std::vector<CheckResult>& checks() const { return checks_; }
  std::size_t size() const { return checks_.size(); }

  std::string summary_line() const;

 private:
  std::vector<CheckResult> checks_;
};

}  // namespace asdim
