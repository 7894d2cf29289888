#pragma once

// Shared scalar types, error taxonomy, exact rational scales and point sets.
// All geometry in this library is exact: distances and radii are 64-bit
// integers, the only fractional quantity (a tenth of a guide scale) is kept
// as a rational and compared by cross-multiplication.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace asdim {

using Point = std::int32_t;
using Dist = std::int64_t;

inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

struct AsdimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// bad parameters (sizes, flags, unsupported combinations)
struct ParamError : AsdimError {
  using AsdimError::AsdimError;
};
// malformed input data (files, tables)
struct DataError : AsdimError {
  using AsdimError::AsdimError;
};
// violated precondition of an operation
struct ContractError : AsdimError {
  using AsdimError::AsdimError;
};
// a should-be-impossible state; indicates a bug in this library
struct InternalError : AsdimError {
  using AsdimError::AsdimError;
};
// the refinement array was not computed far enough; carries how far to go
struct HorizonError : AsdimError {
  int needed;
  HorizonError(const std::string& msg, int needed_m) : AsdimError(msg), needed(needed_m) {}
};

inline Dist sat_add(Dist a, Dist b) {
  if (a > kInfDist - b) return kInfDist;
  return a + b;
}

inline Dist sat_mul(Dist a, Dist b) {
  if (a == 0 || b == 0) return 0;
  if (a > kInfDist / b) return kInfDist;
  return a * b;
}

// Exact nonnegative rational with a positive denominator. Never rounded;
// comparisons against integer distances go through 128-bit products.
struct Ratio {
  Dist num = 0;
  Dist den = 1;

  static Ratio tenth(Dist r) { return Ratio{r, 10}; }
};

// value <= q ?
inline bool dist_le(Dist value, Ratio q) {
  if (value == kInfDist) return false;
  return static_cast<__int128>(value) * q.den <= static_cast<__int128>(q.num);
}

// Sorted duplicate-free set of point indices with value semantics.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  static PointSet single(Point p) { return PointSet(std::vector<Point>{p}); }
  static PointSet full(int k) {
    std::vector<Point> v(k);
    for (int i = 0; i < k; ++i) v[i] = i;
    return PointSet(std::move(v));
  }

  bool empty() const { return pts_.empty(); }
  int size() const { return static_cast<int>(pts_.size()); }
  const std::vector<Point>& items() const { return pts_; }
  Point operator[](int i) const { return pts_[i]; }

  bool contains(Point p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

  bool intersects(const PointSet& other) const {
    auto a = pts_.begin();
    auto b = other.pts_.begin();
    while (a != pts_.end() && b != other.pts_.end()) {
      if (*a == *b) return true;
      if (*a < *b)
        ++a;
      else
        ++b;
    }
    return false;
  }

  bool subset_of(const PointSet& other) const {
    return std::includes(other.pts_.begin(), other.pts_.end(), pts_.begin(), pts_.end());
  }

  PointSet unite(const PointSet& other) const {
    std::vector<Point> out;
    out.reserve(pts_.size() + other.pts_.size());
    std::set_union(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                   std::back_inserter(out));
    PointSet r;
    r.pts_ = std::move(out);
    return r;
  }

  PointSet intersect(const PointSet& other) const {
    std::vector<Point> out;
    std::set_intersection(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                          std::back_inserter(out));
    PointSet r;
    r.pts_ = std::move(out);
    return r;
  }

  PointSet subtract(const PointSet& other) const {
    std::vector<Point> out;
    std::set_difference(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                        std::back_inserter(out));
    PointSet r;
    r.pts_ = std::move(out);
    return r;
  }

  void add(Point p) {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) pts_.insert(it, p);
  }

  bool operator==(const PointSet& other) const = default;
  auto operator<=>(const PointSet& other) const = default;

 private:
  std::vector<Point> pts_;
};

std::string format_points(const PointSet& s, int limit = 8);

}  // namespace asdim
