#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "asdim/cover.hpp"
#include "asdim/json_io.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"
#include "corpus.hpp"

using namespace asdim;
using corpus::ps;

TEST_CASE("schedule scales are minimal strict integers") {
  CHECK(next_scale(ScheduleMode::strict_100, 1, 1) == 102);
  CHECK(next_scale(ScheduleMode::strict_100, 2, 3) == 604);
  CHECK(next_scale(ScheduleMode::lax_2, 5, 7) == 15);
  CHECK(next_scale(ScheduleMode::lax_2, 1, kInfDist) == kInfDist);
  CHECK(schedule_from_name("strict_100") == ScheduleMode::strict_100);
  CHECK(schedule_from_name("lax_2") == ScheduleMode::lax_2);
  CHECK_FALSE(schedule_from_name("bogus").has_value());
}

TEST_CASE("expansion keeps disjointness and gains a lebesgue number") {
  FiniteMetricSpace X = make_path(5);
  SplitCover sc{X.meta.id(), {{ps({0}), ps({4})}}};
  SplitCover out = expand_cover(X, sc, 1);
  REQUIRE(out.families.size() == 1);
  REQUIRE(out.families[0].size() == 2);
  CHECK(out.families[0][0] == ps({0, 1}));
  CHECK(out.families[0][1] == ps({3, 4}));
  CHECK(is_r_disjoint(X, out.families[0], 1));

  // {0} and {2} sit at distance 2, not (3*1)-disjoint
  SplitCover tight{X.meta.id(), {{ps({0}), ps({2})}}};
  CHECK_THROWS_AS((void)expand_cover(X, tight, 1), ContractError);
}

TEST_CASE("expansion grows the mesh by at most twice the radius") {
  auto X = corpus::grid_space(6, 6, GridNorm::linf);
  int used = 0;
  for (Dist r : {1, 2}) {
    SplitCover raw = run_splitter(SplitterKind::brick, *X, 3 * r, 2, &used);
    Dist before = mesh(*X, raw.all_members());
    SplitCover out = expand_cover(*X, raw, r);
    CHECK(mesh(*X, out.all_members()) <= before + 2 * r);
    CHECK(lebesgue_at_least(*X, out.all_members(), r));
  }
}

TEST_CASE("base point absorption merges nearby members") {
  FiniteMetricSpace X = make_path(5);
  SplitCover sc{X.meta.id(), {{ps({0, 1}), ps({3, 4})}}};
  SplitCover out = respect_basepoint(X, sc, 0, 1);
  REQUIRE(out.families[0].size() == 2);
  CHECK(out.families[0][0] == ps({0, 1}));
  CHECK(out.families[0][1] == ps({3, 4}));
  CHECK(ball(X, 0, 1).subset_of(out.families[0][0]));

  // a family with nothing near the base gains exactly one member
  SplitCover far{X.meta.id(), {{ps({3, 4})}}};
  SplitCover out2 = respect_basepoint(X, far, 0, 1);
  REQUIRE(out2.families[0].size() == 2);
  CHECK(out2.families[0][0] == ps({0, 1}));
  CHECK(out2.families[0][1] == ps({3, 4}));
}

TEST_CASE("base point absorption is idempotent and bounded") {
  auto X = corpus::grid_space(5, 5, GridNorm::l1);
  int used = 0;
  SplitCover raw = run_splitter(SplitterKind::greedy, *X, 3, 1, &used);
  SplitCover expanded = expand_cover(*X, raw, 1);
  SplitCover once = respect_basepoint(*X, expanded, 0, 1);
  for (std::size_t j = 0; j < expanded.families.size(); ++j) {
    CHECK(once.families[j].size() <= expanded.families[j].size() + 1);
    CHECK(ball(*X, 0, 1).subset_of(once.families[j].front()));
    CHECK(is_r_disjoint(*X, once.families[j], 1));
  }
  SplitCover twice = respect_basepoint(*X, once, 0, 1);
  for (std::size_t j = 0; j < once.families.size(); ++j)
    CHECK(twice.families[j] == once.families[j]);
}

TEST_CASE("brick splitter tiles the path with two alternating families") {
  FiniteMetricSpace X = make_path(9);
  int used = 0;
  SplitCover sc = run_splitter(SplitterKind::brick, X, 1, 1, &used);
  CHECK(used == 2);
  REQUIRE(sc.families.size() == 2);
  for (const auto& fam : sc.families) CHECK(is_r_disjoint(X, fam, 1));
  CHECK(covers_space(X.size(), sc.all_members()));

  SplitCover wide = run_splitter(SplitterKind::brick, X, 5, 1, &used);
  for (const auto& fam : wide.families) CHECK(is_r_disjoint(X, fam, 5));
  CHECK(covers_space(X.size(), wide.all_members()));
}

TEST_CASE("brick splitter lays masonry on grids in both norms") {
  for (GridNorm norm : {GridNorm::linf, GridNorm::l1}) {
    auto X = corpus::grid_space(12, 12, norm);
    for (Dist s : {1, 2, 3, 5}) {
      int used = 0;
      SplitCover sc = run_splitter(SplitterKind::brick, *X, s, 2, &used);
      CHECK(used == 3);
      REQUIRE(sc.families.size() == 3);
      for (const auto& fam : sc.families) CHECK(is_r_disjoint(*X, fam, s));
      CHECK(covers_space(X->size(), sc.all_members()));
    }
  }
}

TEST_CASE("greedy splitter always covers with strictly separated families") {
  auto T = corpus::tree_space(3, 3);
  for (Dist s : {1, 2, 4}) {
    int used = 0;
    SplitCover sc = run_splitter(SplitterKind::greedy, *T, s, 1, &used);
    CHECK(used >= 1);
    CHECK(covers_space(T->size(), sc.all_members()));
    for (const auto& fam : sc.families) CHECK(is_r_disjoint(*T, fam, s));
  }
}

TEST_CASE("exact splitter matches the forced small cases") {
  FiniteMetricSpace X = make_path(5);
  int used = 0;
  SplitCover sc = run_splitter(SplitterKind::exact, X, 1, 1, &used);
  CHECK(used == 2);
  for (const auto& fam : sc.families) CHECK(is_r_disjoint(X, fam, 1));
  CHECK(covers_space(X.size(), sc.all_members()));

  FiniteMetricSpace two = make_path(2);
  SplitCover forced = run_splitter(SplitterKind::exact, two, 1, 1, &used);
  CHECK(used == 2);
  CHECK(covers_space(2, forced.all_members()));

  CHECK_THROWS_AS((void)run_splitter(SplitterKind::exact, make_path(15), 1, 1, &used),
                  ParamError);
}

TEST_CASE("splitter rejects bad parameters") {
  FiniteMetricSpace X = make_path(9);
  int used = 0;
  CHECK_THROWS_AS((void)run_splitter(SplitterKind::brick, X, 0, 1, &used), ParamError);
  CHECK_THROWS_AS((void)run_splitter(SplitterKind::brick, X, 1, 0, &used), ParamError);
  CHECK_THROWS_AS(
      (void)run_splitter(SplitterKind::brick, *corpus::tree_space(2, 2), 1, 1, &used),
      ParamError);
}

TEST_CASE("witnessing sequences certify themselves") {
  for (ScheduleMode mode : {ScheduleMode::strict_100, ScheduleMode::lax_2}) {
    GuidedSequence seq = corpus::witness(corpus::path_space(9), 1, mode, SplitterKind::brick);
    CHECK(seq.n() == 1);
    CHECK(seq.stored_levels() >= 2);
    CHECK(seq.levels.front().guide.r == 1);
    CHECK(seq.trivial_at(seq.stored_levels()));
    CHECK_FALSE(seq.n_raised);
    ValidationReport wrep = check_witnessing(seq);
    INFO(wrep.summary_line());
    CHECK(wrep.ok());
    ValidationReport drep = check_defining(seq);
    INFO(drep.summary_line());
    CHECK(drep.ok());
    for (int i = 1; i < seq.stored_levels(); ++i)
      CHECK(seq.guide_at(i + 1).r > seq.guide_at(i).r);
  }
}

TEST_CASE("the guide tail extends analytically past the stored levels") {
  GuidedSequence seq =
      corpus::witness(corpus::path_space(9), 1, ScheduleMode::lax_2, SplitterKind::brick);
  const int L = seq.stored_levels();
  GuidePair beyond = seq.guide_at(L + 3);
  CHECK(beyond.r > seq.guide_at(L).r);
  CHECK(beyond.R > beyond.r);
  SplitCover tail = seq.cover_at(L + 3);
  CHECK(tail.is_trivial(9));
  CHECK(tail.n() == seq.n());
}

TEST_CASE("a splitter needing more colors raises the split index") {
  auto X = corpus::random_space(14, 5, 3);
  GuidedSequence seq = corpus::witness(X, 1, ScheduleMode::lax_2, SplitterKind::greedy);
  CHECK(check_witnessing(seq).ok());
  CHECK(check_defining(seq).ok());
  if (seq.n_raised) CHECK(seq.n() > 1);
  CHECK(seq.n() + 1 == static_cast<int>(seq.levels.front().cover.families.size()));
}

TEST_CASE("checker catches a flat schedule") {
  GuidedSequence seq =
      corpus::witness(corpus::path_space(9), 1, ScheduleMode::lax_2, SplitterKind::brick);
  REQUIRE(seq.stored_levels() >= 2);
  seq.levels[1].guide.r = 2 * seq.levels[0].guide.R;
  ValidationReport rep = check_witnessing(seq);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& c : rep.failures()) found = found || c.name == "L2_schedule";
  CHECK(found);
}

TEST_CASE("checker catches members at exactly the separation distance") {
  FiniteMetricSpace X = make_path(5);
  GuidedSequence seq;
  seq.space = corpus::path_space(5);
  seq.mode = ScheduleMode::lax_2;
  seq.respects_base_point = false;
  seq.levels.push_back({SplitCover{X.meta.id(), {{ps({0, 1}), ps({3, 4})}, {ps({2})}}}, GuidePair{3, 2}});
  ValidationReport rep = check_witnessing(seq);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& c : rep.failures()) found = found || c.name == "L1_family_0_disjoint";
  CHECK(found);
}

TEST_CASE("defining checker pinpoints missing absorption") {
  FiniteMetricSpace X = make_path(3);
  SplitCover f1{X.meta.id(),
                {{PointSet::single(0), PointSet::single(1), PointSet::single(2)}}};
  SplitCover f2{X.meta.id(), {{ps({0, 1}), ps({2})}}};
  SplitCover f3{X.meta.id(), {{ps({0, 1, 2})}}};
  CHECK(check_defining(3, {f1, f2, f3}).ok());

  SplitCover bad{X.meta.id(), {{ps({0, 1}), ps({1, 2})}}};
  CHECK_FALSE(check_defining(3, {f1, bad, f3}).ok());

  ValidationReport rep = check_defining(3, {f1, f2});
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& c : rep.failures())
    found = found || c.name.find("absor") != std::string::npos;
  CHECK(found);
}

TEST_CASE("sequence json round trip") {
  GuidedSequence seq =
      corpus::witness(corpus::path_space(9), 1, ScheduleMode::strict_100, SplitterKind::brick);
  Json j = sequence_to_json(seq);
  GuidedSequence back = sequence_from_json(j);
  CHECK(back.mode == seq.mode);
  CHECK(back.stored_levels() == seq.stored_levels());
  CHECK(back.respects_base_point == seq.respects_base_point);
  for (int i = 1; i <= seq.stored_levels(); ++i) {
    CHECK(back.guide_at(i).R == seq.guide_at(i).R);
    CHECK(back.guide_at(i).r == seq.guide_at(i).r);
    CHECK(back.cover_at(i).families == seq.cover_at(i).families);
  }
  CHECK(canonical_dump(sequence_to_json(back)) == canonical_dump(j));
}
