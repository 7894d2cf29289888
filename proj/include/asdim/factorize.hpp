#pragma once

// Factorization of a map f: X -> Y through a space Z of controlled size and
// dimension. Starting from a witnessing sequence on X, image covers on Y are
// fixed, each level is regrouped by the targets (stage 0), and a diagonal
// sweep repeatedly splits stage p into stage p+1 using the next level as a
// splitting basis. Stages stabilize on growing balls around the base point;
// the stabilized limit yields Z (a maximal separated subset of level 1), the
// retraction g, and h = f restricted to Z. The exactification then replaces
// (Z, g, h) by the graph space Z' = {(f(x), g(x))} where h'∘g' equals f on
// the nose.
//
// Members of the intermediate covers are tracked as unions of the original
// level members (constituents), because the splitting rules act on
// constituents, not on raw points.

#include <optional>
#include <utility>
#include <vector>

#include "asdim/coarse.hpp"
#include "asdim/cover.hpp"
#include "asdim/report.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

namespace asdim {

struct TaggedMember {
  PointSet points;                // union of the constituents below
  std::vector<int> constituents;  // indices into the level's source family
};

struct TaggedFamily {
  std::vector<TaggedMember> members;
};

struct TaggedCover {
  std::vector<TaggedFamily> families;

  int n() const { return static_cast<int>(families.size()) - 1; }
  SplitCover untag(const std::string& space_id) const;
};

// image covers on Y: images of the level's members, merged by their least
// image point so the member count never exceeds |Y|, plus singletons for
// uncovered points. f applied to the level cover refines the result by
// construction.
std::vector<Cover> build_target_covers(const CoarseMap& f, const GuidedSequence& seqX,
                                       int levels);

// stage 0 at level i: each member F of the level family is assigned the
// first target member containing f(F); members sharing an assignment merge.
// Errors when some F has no covering target (refinement contract).
TaggedCover build_F0(const CoarseMap& f, const GuidedSequence& seqX, const Cover& target, int i);

struct SplitContext {
  Point b = 0;      // base point of X
  int i = 0;        // level of the member being split
  int p = 0;        // stage of the member being split
  Dist r_m = 0;     // scale at m = p + i
  Dist r_next = 0;  // scale at level i + 1
};

// splits A into the four collections relative to one basis family:
//   c1: constituents meeting ball(b, i*r_m), one member
//   c2: per basis member F, constituents contained in F
//   c3: per basis member F, constituents (r_next/10)-close to F
//   c4: whatever remains, one member
// in that order, empty collections dropped. A constituent close to two basis
// members breaks the disjointness arithmetic and is an internal error.
std::vector<TaggedMember> split_by(const FiniteMetricSpace& X, const TaggedMember& A,
                                   const std::vector<PointSet>& source_members,
                                   const TaggedFamily& basis, const SplitContext& ctx);

struct FactorizationState {
  CoarseMap f;
  GuidedSequence seqX;
  Point b = 0;
  std::vector<Cover> targets;                  // targets[i-1] covers Y for level i
  std::vector<std::vector<TaggedCover>> rows;  // rows[p][i-1] = stage p, level i
  int m_max = 0;
  int last_diagonal = 0;  // max p+i built so far

  bool has_cell(int p, int i) const;
  const TaggedCover& cell(int p, int i) const;
};

// least horizon certified to stabilize every stored level: the first m with
// ball(b, r_{1+m}) covering X, plus the stored level count
int default_horizon(const GuidedSequence& seqX);

// stage-0 seed at level 1; m_max < 0 picks the certified default
FactorizationState init_factorization(const CoarseMap& f, const GuidedSequence& seqX,
                                      int m_max = -1);

// builds the next diagonal p+i = m+1: first stage 0 of level m+1, then each
// cell (p+1, i) with p+i = m, i descending, by splitting every member of
// cell (p, i) through the families of cell (p, i+1) in order
void advance_diagonal(FactorizationState& st, int m);

// advances until the horizon
void run_sweep(FactorizationState& st);

struct StabilizedLimit {
  std::vector<SplitCover> levels;  // limit cover per stored level
  std::vector<int> p_star;         // first stabilized stage per level
  ValidationReport certificate;    // agreement of later stages with the limit
};

// per level i, the first stage p with ball(b, i*r_{i+p}) = X; later computed
// stages must agree exactly. Throws a horizon error naming the required
// sweep depth when a level never stabilizes within the computed table.
StabilizedLimit stabilized_limit(const FactorizationState& st);

struct Factorization {
  SpaceRef Z;         // separated subset of X carrying the level metric
  PointSet Z_points;  // Z as points of X
  CoarseMap g;        // X -> Z retraction
  CoarseMap h;        // Z -> Y, restriction of f
};

Factorization extract_factorization(const CoarseMap& f, const std::vector<SplitCover>& limit);

struct FactorizationResult {
  SpaceRef Z;
  PointSet Z_points;
  CoarseMap g;
  CoarseMap h;
  SpaceRef Zprime;  // graph {(f(x), g(x))} with the max-coordinate metric
  std::vector<std::pair<Point, Point>> Zprime_pairs;  // (y, z) per Z' point
  CoarseMap gprime;  // X -> Z'
  CoarseMap hprime;  // Z' -> Y, first coordinate
  CoarseMap pi;      // Z' -> Z, second coordinate
};

// exactification: h'∘g' reproduces f pointwise
FactorizationResult exact_factorization(const CoarseMap& f, const Factorization& zgh);

// per cover member B over Z: preimage of B under pi sits inside
// f(g^{-1}(B)) x B, checked extensionally
ValidationReport check_pi_containment(const FactorizationResult& res,
                                      const std::vector<PointSet>& Z_cover);

}  // namespace asdim
