#include "asdim/types.hpp"

#include <sstream>

namespace asdim {

std::string format_points(const PointSet& s, int limit) {
  std::ostringstream out;
  out << '{';
  int shown = s.size() < limit ? s.size() : limit;
  for (int i = 0; i < shown; ++i) {
    if (i) out << ',';
    out << s[i];
  }
  if (s.size() > shown) out << ",..+" << (s.size() - shown);
  out << '}';
  return out.str();
}

}  // namespace asdim
