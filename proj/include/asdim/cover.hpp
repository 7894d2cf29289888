#pragma once

// Covers of a finite metric space and the combinatorics on them: stars,
// separation, mesh, strict r-disjointness and ball-based Lebesgue numbers.
// A SplitCover is a cover whose member list is split into families; within
// one family members are expected to be pairwise disjoint (checkers verify,
// the type does not enforce).

#include <string>
#include <vector>

#include "asdim/space.hpp"
#include "asdim/types.hpp"

namespace asdim {

struct Cover {
  std::string space_id;
  std::vector<PointSet> members;
};

struct SplitCover {
  std::string space_id;
  std::vector<std::vector<PointSet>> families;

  int n() const { return static_cast<int>(families.size()) - 1; }

  std::vector<PointSet> all_members() const {
    std::vector<PointSet> out;
    for (const auto& fam : families) out.insert(out.end(), fam.begin(), fam.end());
    return out;
  }

  Cover as_cover() const { return Cover{space_id, all_members()}; }

  int member_count() const {
    int c = 0;
    for (const auto& fam : families) c += static_cast<int>(fam.size());
    return c;
  }

  // exactly one member and it is the whole space
  bool is_trivial(int universe) const {
    return member_count() == 1 && all_members()[0].size() == universe;
  }
};

// st(A, fam) = A united with every member meeting A
PointSet star(const PointSet& a, const std::vector<PointSet>& fam);

// the cover of all point stars st({x}, C)
Cover star_cover(const FiniteMetricSpace& X, const Cover& c);

// st(A, fam) does not meet B
bool separates(const std::vector<PointSet>& fam, const PointSet& a, const PointSet& b);

// max member diameter; requires a nonempty cover of nonempty members
Dist mesh(const FiniteMetricSpace& X, const std::vector<PointSet>& members);
inline Dist mesh(const FiniteMetricSpace& X, const Cover& c) { return mesh(X, c.members); }

// strict: distinct members at set distance > r; throws on overlapping members
bool is_r_disjoint(const FiniteMetricSpace& X, const std::vector<PointSet>& fam, Dist r);

// every ball(x, r) fits inside some member
bool lebesgue_at_least(const FiniteMetricSpace& X, const std::vector<PointSet>& members, Dist r);
inline bool lebesgue_at_least(const FiniteMetricSpace& X, const Cover& c, Dist r) {
  return lebesgue_at_least(X, c.members, r);
}

// every member of c lies inside some member of d
bool refines(const std::vector<PointSet>& c, const std::vector<PointSet>& d);

bool covers_space(int universe, const std::vector<PointSet>& members);

// members intersected with Z and reindexed by position in Z; empty traces dropped
SplitCover restrict_to_subset(const SplitCover& sc, const PointSet& z);

}  // namespace asdim
