#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "asdim/coarse.hpp"
#include "asdim/cover.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"
#include "asdim/wedge.hpp"
#include "corpus.hpp"

using namespace asdim;

namespace {

WedgeConstituent part(SpaceRef X, int n = 1) {
  GuidedSequence seq = corpus::witness(X, n, ScheduleMode::lax_2, SplitterKind::greedy);
  return WedgeConstituent{X, seq};
}

}  // namespace

TEST_CASE("two paths glue at the base into a separated wedge") {
  WedgeSpace w = build_wedge({part(corpus::path_space(5)), part(corpus::path_space(5))});
  int sum = 0;
  for (const auto& p : w.parts) sum += p.space->size();
  CHECK(w.points == sum - 1);
  CHECK(w.origin[0].second == 0);
  for (const auto& tw : w.to_wedge) CHECK(tw[0] == 0);

  // normalized parts carry singleton level-1 families
  for (const auto& p : w.parts)
    for (const auto& fam : p.seq.levels.front().cover.families)
      for (const auto& m : fam) CHECK(m.size() == 1);

  auto combined = combine_sequences(w);
  REQUIRE(!combined.empty());
  // every level-1 family pins the base alone
  for (const auto& fam : combined.front().families) {
    bool base_member = false;
    for (const auto& m : fam)
      if (m.contains(0)) {
        base_member = true;
        CHECK(m == PointSet::single(0));
      }
    CHECK(base_member);
  }
  CHECK(check_defining(w.points, combined).ok());
}

TEST_CASE("the wedge report covers defining, restriction and absorption") {
  WedgeSpace w = build_wedge({part(corpus::path_space(65)), part(corpus::path_space(129)),
                              part(corpus::grid_space(9, 9, GridNorm::linf))});
  auto combined = combine_sequences(w);
  ValidationReport rep = check_wedge(w, combined);
  INFO(rep.summary_line());
  CHECK(rep.ok());

  // tampering with a member away from the base breaks the restriction identity
  auto broken = combined;
  REQUIRE(broken.size() >= 2);
  bool tampered = false;
  for (auto& fam : broken[1].families)
    for (auto& m : fam)
      if (!tampered && m.size() > 1 && !m.contains(0)) {
        m = PointSet::single(m[0]);
        tampered = true;
      }
  REQUIRE(tampered);
  CHECK_FALSE(check_wedge(w, broken).ok());
}

TEST_CASE("a constituent too small to split still wedges") {
  // grid(3,3) collapses to its base alone, leaving an empty second family
  WedgeSpace w = build_wedge({part(corpus::path_space(5)), part(corpus::path_space(9)),
                              part(corpus::grid_space(3, 3, GridNorm::linf))});
  auto combined = combine_sequences(w);
  ValidationReport rep = check_wedge(w, combined);
  INFO(rep.summary_line());
  CHECK(rep.ok());
}

TEST_CASE("the canonical part-isometry obeys the image diameter bounds") {
  WedgeSpace w = build_wedge({part(corpus::path_space(9)), part(corpus::path_space(7))});
  auto combined = combine_sequences(w);
  CoarseMap iso = canonical_wedge_isometry(w, combined);
  CHECK(validate_metric(*iso.source).ok());
  ValidationReport rep = check_wedge_images(w, combined, iso);
  INFO(rep.summary_line());
  CHECK(rep.ok());

  // cross-part distances go through the base point
  const FiniteMetricSpace& W = *iso.source;
  for (Point u = 0; u < W.size(); ++u)
    for (Point v = 0; v < W.size(); ++v) {
      if (u == 0 || v == 0 || w.origin[u].first == w.origin[v].first) continue;
      CHECK(W.dist(u, v) == W.dist(u, 0) + W.dist(0, v));
    }
}

TEST_CASE("wedge construction rejects bad inputs") {
  CHECK_THROWS_AS((void)build_wedge({part(corpus::path_space(5))}), ParamError);

  auto no_base = std::make_shared<FiniteMetricSpace>(make_path(5));
  no_base->set_base_point(std::nullopt);
  GuidedSequence seq =
      corpus::witness(corpus::path_space(5), 1, ScheduleMode::lax_2, SplitterKind::greedy);
  CHECK_THROWS_AS(
      (void)build_wedge({WedgeConstituent{no_base, seq}, part(corpus::path_space(5))}),
      ParamError);
}

TEST_CASE("four constituents still wedge cleanly") {
  WedgeSpace w = build_wedge({part(corpus::path_space(5)), part(corpus::path_space(7)),
                              part(corpus::path_space(9)), part(corpus::path_space(11))});
  auto combined = combine_sequences(w);
  ValidationReport rep = check_wedge(w, combined);
  INFO(rep.summary_line());
  CHECK(rep.ok());
}
