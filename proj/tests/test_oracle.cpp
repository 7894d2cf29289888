#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "asdim/coarse.hpp"
#include "asdim/cover.hpp"
#include "asdim/factorize.hpp"
#include "asdim/oracle.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"
#include "corpus.hpp"

using namespace asdim;
using corpus::ps;

TEST_CASE("reference level metric on the tiny tower") {
  FiniteMetricSpace X = make_path(3);
  std::vector<SplitCover> levels = {
      SplitCover{X.meta.id(),
                 {{PointSet::single(0), PointSet::single(1), PointSet::single(2)}}},
      SplitCover{X.meta.id(), {{ps({0, 1}), ps({2})}}},
      SplitCover{X.meta.id(), {{ps({0, 1, 2})}}}};
  CHECK(oracle::oracle_dF(3, levels, 0, 1) == 1);
  CHECK(oracle::oracle_dF(3, levels, 0, 2) == 2);
  CHECK(oracle::oracle_dF(3, levels, 1, 2) == 2);
  CHECK(oracle::oracle_dF(3, levels, 1, 1) == 0);
}

TEST_CASE("reference regrouping by first covering target") {
  auto X = corpus::path_space(4);
  CoarseMap id = identity_map(X);
  std::vector<PointSet> members = {ps({0, 1}), ps({2}), ps({3})};
  std::vector<PointSet> targets = {ps({0, 1, 2}), ps({3})};
  auto groups = oracle::oracle_group_by_target(id, members, targets);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::vector<int>{0, 1});
  CHECK(groups[1] == std::vector<int>{2});

  std::vector<PointSet> bad_targets = {ps({0, 1})};
  CHECK_THROWS_AS((void)oracle::oracle_group_by_target(id, members, bad_targets),
                  ContractError);
}

TEST_CASE("reference splitting mirrors the collection rules") {
  FiniteMetricSpace X = make_path(12);
  std::vector<PointSet> source = {ps({0, 1}), ps({4, 5}), ps({8})};
  auto groups = oracle::oracle_split_by(X, {0, 1, 2}, source, {PointSet::full(12)}, 0, 1, 10);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::vector<int>{0});
  CHECK(groups[1] == std::vector<int>{1, 2});

  std::vector<PointSet> src2 = {ps({5}), ps({7})};
  auto near_far = oracle::oracle_split_by(X, {0, 1}, src2, {ps({3, 4})}, 0, 1, 10);
  REQUIRE(near_far.size() == 2);
  CHECK(near_far[0] == std::vector<int>{0});
  CHECK(near_far[1] == std::vector<int>{1});

  std::vector<PointSet> src3 = {ps({5, 6})};
  CHECK_THROWS_AS(
      (void)oracle::oracle_split_by(X, {0}, src3, {ps({3, 4}), ps({7, 8})}, 0, 1, 20),
      InternalError);
}

TEST_CASE("dagger checks pass on a run and fail on a mutation") {
  auto X = corpus::path_space(30);
  GuidedSequence seq =
      corpus::witness(X, 1, ScheduleMode::strict_100, SplitterKind::brick);
  FactorizationState st = init_factorization(identity_map(X), seq);
  run_sweep(st);
  ValidationReport all = oracle::check_all_daggers(st);
  INFO(all.summary_line());
  CHECK(all.ok());

  StabilizedLimit lim = stabilized_limit(st);
  CHECK(oracle::check_claim_family(st, lim.levels).ok());

  // rip one point out of a stage-1 member: the constituent partition breaks
  FactorizationState mutated = st;
  for (auto& fam : mutated.rows[1][0].families)
    for (auto& m : fam.members)
      if (m.points.size() > 1) {
        m.points = m.points.subtract(PointSet::single(m.points[0]));
        goto mutated_done;
      }
mutated_done:
  CHECK_FALSE(oracle::check_daggers(mutated, 1, 1).ok());
}

TEST_CASE("exact certificate search on forced cases") {
  FiniteMetricSpace five = make_path(5);
  CHECK(oracle::exhaustive_asdim_upper(five, 1, 2, oracle::AsdimMode::exact) == 2);
  CHECK(oracle::exhaustive_asdim_upper(five, 0, 0, oracle::AsdimMode::exact) == 1);
  FiniteMetricSpace two = make_path(2);
  CHECK(oracle::exhaustive_asdim_upper(two, 1, 0, oracle::AsdimMode::exact) == 2);
  CHECK_THROWS_AS(
      (void)oracle::exhaustive_asdim_upper(make_path(15), 1, 2, oracle::AsdimMode::exact),
      ParamError);
}

TEST_CASE("greedy certificates never beat the exact ones") {
  for (Dist r : {1, 2}) {
    for (Dist B : {2, 4}) {
      FiniteMetricSpace X = make_path(8);
      int exact = oracle::exhaustive_asdim_upper(X, r, B, oracle::AsdimMode::exact);
      int greedy = oracle::exhaustive_asdim_upper(X, r, B, oracle::AsdimMode::greedy);
      CHECK(greedy >= exact);
    }
  }
}

TEST_CASE("triangle scan flags the violating triple") {
  FiniteMetricSpace bad =
      FiniteMetricSpace::from_lower_triangular({"a", "b", "c"}, {1, 5, 1}, std::nullopt);
  ValidationReport rep = oracle::triple_scan_triangle(bad);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(validate_metric(bad).ok());

  CHECK(oracle::triple_scan_triangle(make_path(9)).ok());
  FiniteMetricSpace one({"a"}, {0}, std::nullopt);
  CHECK(oracle::triple_scan_triangle(one).ok());
}
