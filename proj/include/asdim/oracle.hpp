#pragma once

// Brute-force reference implementations, kept deliberately naive and written
// from the definitions alone. They recompute stars and separations from
// scratch instead of reusing the indexed fast paths, so agreement between
// the two sides is meaningful evidence. Nothing here is linked into the
// production library; the verification CLI and the tests pull it in.

#include <vector>

#include "asdim/cover.hpp"
#include "asdim/factorize.hpp"
#include "asdim/report.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

namespace asdim::oracle {

// largest level whose cover separates x and y, by linear scan over all
// stored levels with separation recomputed from the definition
Dist oracle_dF(int universe, const std::vector<SplitCover>& levels, Point x, Point y);

// stage-0 grouping at one family, re-derived by a straight assignment scan;
// returns the groups as lists of member indices, ordered by target index
std::vector<std::vector<int>> oracle_group_by_target(const CoarseMap& f,
                                                     const std::vector<PointSet>& members,
                                                     const std::vector<PointSet>& targets);

// the four collections re-derived rule by rule; returns constituent-index
// groups in output order
std::vector<std::vector<int>> oracle_split_by(const FiniteMetricSpace& X,
                                              const std::vector<int>& constituents,
                                              const std::vector<PointSet>& source_members,
                                              const std::vector<PointSet>& basis_members,
                                              Point b, Dist c1_radius, Dist r_next);

// the five invariants of the sweep at cell (p, i), checked extensionally:
// cardinality cap, constituent partition, agreement with stage p-1 on the
// stabilization ball, star refinement into level i+1, and separation of the
// previous stage's level-(i+1) families
ValidationReport check_daggers(const FactorizationState& st, int p, int i);

// every cell of the computed table
ValidationReport check_all_daggers(const FactorizationState& st);

// each level member lies in a limit member, and each limit member lies in a
// member of every computed stage
ValidationReport check_claim_family(const FactorizationState& st,
                                    const std::vector<SplitCover>& limit);

enum class AsdimMode { exact, greedy };

// smallest k (exact mode, <= 14 points) or an upper bound (greedy mode) such
// that some cover with mesh <= B splits into k families of r-disjoint sets
int exhaustive_asdim_upper(const FiniteMetricSpace& X, Dist r, Dist B, AsdimMode mode);

// triangle inequality over all ordered triples
ValidationReport triple_scan_triangle(const FiniteMetricSpace& X);

}  // namespace asdim::oracle
