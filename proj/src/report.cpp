#include "asdim/report.hpp"

#include <sstream>

namespace asdim {

std::string ValidationReport::summary_line() const {
  std::size_t failed = 0;
  const CheckResult* first = nullptr;
  for (const auto& c : checks_) {
    if (!c.pass) {
      ++failed;
      if (!first) first = &c;
    }
  }
  std::ostringstream out;
  if (failed == 0) {
    out << "ok: " << checks_.size() << " checks passed";
  } else {
    out << "FAIL: " << failed << " of " << checks_.size() << " checks failed; first: "
        << first->name;
    if (!first->witness.empty()) out << " [" << first->witness << "]";
  }
  return out.str();
}

}  // namespace asdim
