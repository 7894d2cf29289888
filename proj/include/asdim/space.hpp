#pragma once

// Finite metric spaces with exact integer distances, plus the seeded
// generators for the standard test families (paths, grids, trees, random
// shortest-path metrics).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asdim/report.hpp"
#include "asdim/types.hpp"

namespace asdim {

// How the space was made. Carried through serialization so structure-aware
// code (the brick splitter) can recover coordinates from indices.
struct SpaceMeta {
  std::string kind;  // "path" | "grid" | "tree" | "random" | "derived" | ""
  long long p1 = 0;  // path: k      grid: w  tree: branching  random: k
  long long p2 = 0;  // path: step   grid: h  tree: depth      random: diameter
  std::string variant;  // grid norm: "l1" | "linf"; derived: origin tag
  std::optional<unsigned long long> seed;

  bool operator==(const SpaceMeta&) const = default;
  std::string id() const;
};

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // full matrix, row-major k*k; not validated (validate_metric is the judge)
  FiniteMetricSpace(std::vector<std::string> names, std::vector<Dist> full,
                    std::optional<Point> base);
  // lower-triangular row-major (entries d(i,j) for i>j); symmetric by construction
  static FiniteMetricSpace from_lower_triangular(std::vector<std::string> names,
                                                 const std::vector<Dist>& tri,
                                                 std::optional<Point> base);

  int size() const { return k_; }
  Dist dist(Point a, Point b) const { return full_[static_cast<std::size_t>(a) * k_ + b]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Point p) const { return names_[p]; }

  std::optional<Point> base_point() const { return base_; }
  void set_base_point(std::optional<Point> b);

  std::vector<Dist> lower_triangular() const;

  Dist diameter() const;
  Dist eccentricity(Point p) const;

  SpaceMeta meta;

 private:
  int k_ = 0;
  std::vector<std::string> names_;
  std::vector<Dist> full_;
  std::optional<Point> base_;
};

using SpaceRef = std::shared_ptr<const FiniteMetricSpace>;

// every distance axiom violation, with witnesses; empty failure list == valid
ValidationReport validate_metric(const FiniteMetricSpace& X);

// closed ball around a set: { x : d(x, A) <= r }; empty A -> empty
PointSet ball(const FiniteMetricSpace& X, const PointSet& a, Dist r);
inline PointSet ball(const FiniteMetricSpace& X, Point p, Dist r) {
  return ball(X, PointSet::single(p), r);
}

Dist point_to_set(const FiniteMetricSpace& X, Point p, const PointSet& a);
// min pairwise distance; kInfDist if either side is empty
Dist set_distance(const FiniteMetricSpace& X, const PointSet& a, const PointSet& b);
Dist set_diameter(const FiniteMetricSpace& X, const PointSet& a);

// b subset of ball(a, r)
bool is_r_close(const FiniteMetricSpace& X, const PointSet& b, const PointSet& a, Dist r);
bool is_r_close(const FiniteMetricSpace& X, const PointSet& b, const PointSet& a, Ratio r);

enum class GridNorm { l1, linf };

FiniteMetricSpace make_path(long long k, Dist step = 1);
FiniteMetricSpace make_grid(long long w, long long h, GridNorm norm);
FiniteMetricSpace make_tree(long long branching, long long depth);
FiniteMetricSpace make_random(long long k, Dist diameter, unsigned long long seed);

}  // namespace asdim
