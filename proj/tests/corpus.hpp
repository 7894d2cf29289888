#pragma once

// Shared space and sequence builders for the test suite.

#include <memory>
#include <utility>
#include <vector>

#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

namespace corpus {

inline asdim::SpaceRef share(asdim::FiniteMetricSpace X) {
  return std::make_shared<asdim::FiniteMetricSpace>(std::move(X));
}

inline asdim::SpaceRef path_space(long long k, asdim::Dist step = 1) {
  return share(asdim::make_path(k, step));
}

inline asdim::SpaceRef grid_space(long long w, long long h, asdim::GridNorm norm) {
  return share(asdim::make_grid(w, h, norm));
}

inline asdim::SpaceRef tree_space(long long branching, long long depth) {
  return share(asdim::make_tree(branching, depth));
}

inline asdim::SpaceRef random_space(long long k, asdim::Dist diameter, unsigned long long seed) {
  return share(asdim::make_random(k, diameter, seed));
}

inline asdim::GuidedSequence witness(asdim::SpaceRef X, int n, asdim::ScheduleMode mode,
                                     asdim::SplitterKind splitter) {
  asdim::WitnessOptions opt;
  opt.n = n;
  opt.mode = mode;
  opt.splitter = splitter;
  return asdim::build_witnessing_sequence(std::move(X), opt);
}

inline std::vector<asdim::SplitCover> levels_of(const asdim::GuidedSequence& seq) {
  std::vector<asdim::SplitCover> out;
  out.reserve(seq.levels.size());
  for (const auto& lv : seq.levels) out.push_back(lv.cover);
  return out;
}

inline asdim::PointSet ps(std::vector<asdim::Point> v) { return asdim::PointSet(std::move(v)); }

}  // namespace corpus
