#pragma once

// Wedge sums of pointed spaces that carry witnessing sequences. Constituents
// are first normalized to maximal level-1-separated subsets containing their
// base points (so level-1 families become singletons), then glued at the
// base. The combined sequence takes the union of the constituent families
// per (level, family index), merging all base-containing members into one.
//
// The wedge never receives a metric of its own; distances on it are always
// read off the combined sequence through the level metric.

#include <vector>

#include "asdim/coarse.hpp"
#include "asdim/cover.hpp"
#include "asdim/report.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

namespace asdim {

struct WedgeConstituent {
  SpaceRef space;     // pointed; base_point must be set
  GuidedSequence seq;  // witnessing and respecting the base point
};

struct WedgeSpace {
  std::vector<WedgeConstituent> parts;  // normalized: level-1 singletons
  int points = 0;                       // wedge universe size; point 0 = base
  // origin[w] = (part index, local point); base reports part 0
  std::vector<std::pair<int, Point>> origin;
  // to_wedge[alpha][local] = wedge id; every base maps to 0
  std::vector<std::vector<Point>> to_wedge;
};

// validates the constituents (witnessing, base-point respecting), normalizes
// them, and glues
WedgeSpace build_wedge(const std::vector<WedgeConstituent>& parts);

// per (level, family): constituent members translated to wedge ids, the
// base-containing ones merged into a single leading member. Shorter
// sequences contribute their constant tails.
std::vector<SplitCover> combine_sequences(const WedgeSpace& w);

// (i) the combined sequence is defining and its level 1 separates all wedge
// points; (ii) per constituent, the level metric and the native metric bound
// each other through the guide pairs; also the restriction identity away
// from the base member and an absorption level for every cross pair
ValidationReport check_wedge(const WedgeSpace& w, const std::vector<SplitCover>& combined);

// for a map isometric on each part under the level metric: every level-i
// member has image diameter at most 2(i-1)
ValidationReport check_wedge_images(const WedgeSpace& w, const std::vector<SplitCover>& combined,
                                    const CoarseMap& f);

// the canonical such map: identity onto the wedge equipped with the glued
// level metric (same part: level metric; across parts: through the base)
CoarseMap canonical_wedge_isometry(const WedgeSpace& w, const std::vector<SplitCover>& combined);

}  // namespace asdim
