#pragma once

// Coarse-geometry layer: maps between finite metric spaces, the level metric
// d_F induced by a sequence of split covers, and expansion profiles.
//
// d_F(x, y) is the largest level whose cover separates x from y (0 when no
// level does). Star refinement makes separation downward-closed in the level
// index, so the largest separating level is found by binary search; the
// SeparationIndex caches per-level point-to-member incidence to answer
// "does level i separate x, y" quickly.

#include <vector>

#include "asdim/cover.hpp"
#include "asdim/report.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

namespace asdim {

struct CoarseMap {
  SpaceRef source;
  SpaceRef target;
  std::vector<Point> assignment;  // assignment[x] = f(x)

  Point operator()(Point x) const { return assignment[static_cast<size_t>(x)]; }
  PointSet image(const PointSet& A) const;
};

CoarseMap identity_map(SpaceRef X);
CoarseMap constant_map(SpaceRef X, SpaceRef Y, Point y0);
CoarseMap compose(const CoarseMap& outer, const CoarseMap& inner);

// validates sizes and ranges, not geometry
ValidationReport check_map(const CoarseMap& f);

// max over x of d_target(f(x), g(x)); the maps must share domain and target
Dist closeness_radius(const CoarseMap& f, const CoarseMap& g);

// max_{d(x,y) <= s} d_target(f(x), f(y))
Dist expansion_at(const CoarseMap& f, Dist s);

struct ExpansionProfile {
  std::vector<Dist> scale;
  std::vector<Dist> rho;
};

// rho per requested scale; scales must be sorted ascending
ExpansionProfile expansion_profile(const CoarseMap& f, const std::vector<Dist>& scales);

// per target cover, the mesh of its preimage cover next to its own mesh:
// a finite-scale certificate that preimages of bounded covers stay bounded
ValidationReport check_coarse_embedding(const CoarseMap& f, const std::vector<Cover>& target_covers);

class SeparationIndex {
 public:
  // validates the defining conditions unless told not to; binary search in
  // d_F is only sound on defining sequences
  SeparationIndex(const FiniteMetricSpace& X, const std::vector<SplitCover>& levels,
                  bool validate = true);

  int stored_levels() const { return static_cast<int>(inc_.size()); }
  int points() const { return points_; }
  // does stored level i (1-based) separate x and y: no member holds both
  bool separates_points(int i, Point x, Point y) const;

 private:
  // per level, the ids of members containing each point, in a flat pool
  struct LevelIncidence {
    std::vector<int> pool;
    std::vector<int> offset;  // size points+1
  };
  std::vector<LevelIncidence> inc_;
  int points_ = 0;
};

// largest level separating x from y, 0 when none does; tail levels beyond
// the stored list never separate
Dist d_F(const SeparationIndex& idx, Point x, Point y);

// full table, parallel over rows
std::vector<std::vector<Dist>> dF_table(const FiniteMetricSpace& X,
                                        const std::vector<SplitCover>& levels);

// the space (Z, d_F) for Z a subset of X, named after X's points. Errors
// when level 1 fails to separate some pair of Z (d_F would lose positivity).
SpaceRef metric_from_sequence(const FiniteMetricSpace& X, const std::vector<SplitCover>& levels,
                              const PointSet& Z);

// greedy in ascending point order: admit x when the cover separates x from
// every admitted point (no member holds x together with one of them).
// seed_first forces the given point in before the sweep.
PointSet maximal_separated_subset(int universe, const std::vector<PointSet>& members);
PointSet maximal_separated_subset(int universe, const std::vector<PointSet>& members,
                                  Point seed_first);

// g: X -> Z with x in star({g(x)}, level1) for all x; fixes Z pointwise,
// otherwise first eligible z in point order. Maximality of Z guarantees an
// eligible z exists; a miss is an internal error.
CoarseMap assign_retraction(SpaceRef X, const std::vector<PointSet>& level1, SpaceRef Z,
                            const PointSet& Z_points);

}  // namespace asdim
