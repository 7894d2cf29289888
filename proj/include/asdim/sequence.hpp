#pragma once

// Guided sequences of split covers: one split cover per scale, each level
// tagged with a guide pair (R, r) meaning the cover is R-bounded, has
// Lebesgue number at least r, and splits into families of r-disjoint sets.
// Scales grow by a schedule; a sequence ends with the constant {{X}} tail.
//
// Construction pipeline per level: a splitter produces a (3r)-disjoint split
// cover, expansion by r buys the Lebesgue number, and the base-point step
// merges everything near the base ball so every family owns a member
// containing ball(b, r).

#include <functional>
#include <optional>
#include <vector>

#include "asdim/cover.hpp"
#include "asdim/report.hpp"
#include "asdim/space.hpp"

namespace asdim {

enum class ScheduleMode { strict_100, lax_2 };

const char* schedule_name(ScheduleMode m);
std::optional<ScheduleMode> schedule_from_name(const std::string& s);

struct GuidePair {
  Dist R = 0;
  Dist r = 0;
};

// smallest integer r_next honoring the mode: strict_100 needs
// r_next > (100 i + 1) R_i, lax_2 needs r_next > 2 R_i; saturating
Dist next_scale(ScheduleMode mode, int i, Dist R);

struct SequenceLevel {
  SplitCover cover;
  GuidePair guide;
};

struct GuidedSequence {
  SpaceRef space;
  std::vector<SequenceLevel> levels;  // level i lives at levels[i-1]
  ScheduleMode mode = ScheduleMode::strict_100;
  bool respects_base_point = false;
  bool n_raised = false;  // greedy splitter needed more families than asked

  int stored_levels() const { return static_cast<int>(levels.size()); }
  int n() const { return levels.empty() ? 0 : levels.front().cover.n(); }

  // 1-based; beyond the stored list the constant {{X}} tail
  SplitCover cover_at(int i) const;
  // 1-based; beyond the stored list guide pairs extend analytically by the
  // schedule (R = max(diameter, r+1)), saturating instead of overflowing
  GuidePair guide_at(int i) const;

  bool trivial_at(int i) const;
};

// blow every member up to ball(member, r); keeps the family split.
// Precondition (checked): each family is (3r)-disjoint.
SplitCover expand_cover(const FiniteMetricSpace& X, const SplitCover& sc, Dist r);

// per family: members meeting ball(b, 2r) are merged with ball(b, r) into a
// single member placed first; untouched members keep their order. Every
// family of the result owns a member containing ball(b, r).
SplitCover respect_basepoint(const FiniteMetricSpace& X, const SplitCover& sc, Point b, Dist r);

enum class SplitterKind { brick, greedy, exact };

const char* splitter_name(SplitterKind k);
std::optional<SplitterKind> splitter_from_name(const std::string& s);

// A splitter returns a split cover whose families are strictly
// separation-disjoint. colors_used reports how many families were needed.
// brick: paths and grids only (recovers coordinates from meta), n+1 families
//        by pattern; greedy: farthest-point clusters + first-fit coloring,
//        may need more than n+1 colors; exact: exhaustive, <= 14 points.
SplitCover run_splitter(SplitterKind kind, const FiniteMetricSpace& X, Dist separation,
                        int requested_n, int* colors_used);

struct WitnessOptions {
  int n = 1;
  ScheduleMode mode = ScheduleMode::strict_100;
  SplitterKind splitter = SplitterKind::brick;
  Dist r1 = 1;
  int max_levels = 64;
};

// levels until the cover goes trivial; guide pairs are the minimal integers
// (R_i = max(mesh_i, r_i + 1)); respects the base point when the space has one
GuidedSequence build_witnessing_sequence(SpaceRef X, const WitnessOptions& opt);

// every level invariant with witnesses: guide order, family disjointness,
// strict r-disjointness, mesh/Lebesgue, schedule growth, base-point
// containment per family (trivial tail levels pass by convention), tail shape
ValidationReport check_witnessing(const GuidedSequence& seq);

// the scale-free conditions on a finite list of split covers over a universe:
// family disjointness, covering, star-refinement into the next level,
// separation of next-level family members by the current level, and
// absorption of every pair within the stored list
ValidationReport check_defining(int universe, const std::vector<SplitCover>& levels);
ValidationReport check_defining(const GuidedSequence& seq);

}  // namespace asdim
