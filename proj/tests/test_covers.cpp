#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "asdim/cover.hpp"
#include "asdim/space.hpp"
#include "corpus.hpp"

using namespace asdim;
using corpus::ps;

namespace {

const FiniteMetricSpace& L5() {
  static FiniteMetricSpace X = make_path(5);
  return X;
}

}  // namespace

TEST_CASE("star unites the members meeting the seed") {
  std::vector<PointSet> fam = {ps({0, 1}), ps({2, 3}), ps({4})};
  CHECK(star(ps({1, 2}), fam) == ps({0, 1, 2, 3}));
  CHECK(star(ps({4}), {ps({0, 1}), ps({2, 3})}) == ps({4}));
  CHECK(star(PointSet{}, fam) == PointSet{});
}

TEST_CASE("star is monotone in the seed") {
  std::vector<PointSet> fam = {ps({0, 1}), ps({1, 2}), ps({2, 3})};
  for (int small = 0; small < 16; ++small)
    for (int big = small; big < 16; ++big) {
      if ((small & big) != small) continue;
      std::vector<Point> sm, bg;
      for (Point p = 0; p < 4; ++p) {
        if (small & (1 << p)) sm.push_back(p);
        if (big & (1 << p)) bg.push_back(p);
      }
      CHECK(star(PointSet(sm), fam).subset_of(star(PointSet(bg), fam)));
    }
}

TEST_CASE("star cover collects point stars") {
  Cover c{L5().meta.id(), {ps({0, 1}), ps({1, 2}), ps({2, 3}), ps({3, 4})}};
  Cover sc = star_cover(L5(), c);
  REQUIRE(sc.members.size() == 5);
  CHECK(sc.members[2] == ps({1, 2, 3}));

  Cover whole{L5().meta.id(), {PointSet::full(5)}};
  for (const auto& m : star_cover(L5(), whole).members) CHECK(m == PointSet::full(5));

  Cover singles{L5().meta.id(), {}};
  for (Point p = 0; p < 5; ++p) singles.members.push_back(PointSet::single(p));
  for (Point p = 0; p < 5; ++p) CHECK(star_cover(L5(), singles).members[p] == PointSet::single(p));
}

TEST_CASE("separation means the star misses the other side") {
  CHECK(separates({ps({0, 1})}, PointSet::single(0), PointSet::single(2)));
  CHECK_FALSE(separates({ps({0, 1})}, PointSet::single(0), PointSet::single(1)));
  CHECK(separates({}, PointSet::single(0), PointSet::single(1)));
}

TEST_CASE("mesh is the maximal member diameter") {
  CHECK(mesh(L5(), {ps({0, 1}), ps({2, 3, 4})}) == 2);
  CHECK(mesh(L5(), {PointSet::single(3)}) == 0);
  CHECK(mesh(L5(), {PointSet::full(5)}) == 4);
  CHECK_THROWS_AS((void)mesh(L5(), std::vector<PointSet>{}), ContractError);
  CHECK_THROWS_AS((void)mesh(L5(), {PointSet{}}), ContractError);
}

TEST_CASE("mesh of a star cover grows at most threefold") {
  auto grid = corpus::grid_space(4, 4, GridNorm::linf);
  Cover c{grid->meta.id(), {}};
  for (Point p = 0; p < grid->size(); ++p) c.members.push_back(ball(*grid, p, 1));
  CHECK(mesh(*grid, star_cover(*grid, c).members) <= 3 * mesh(*grid, c.members));
}

TEST_CASE("family disjointness is strict in r") {
  std::vector<PointSet> fam = {ps({0}), ps({2}), ps({4})};
  CHECK(is_r_disjoint(L5(), fam, 1));
  CHECK_FALSE(is_r_disjoint(L5(), fam, 2));
  CHECK(is_r_disjoint(L5(), {ps({0, 1})}, 100));
  CHECK_THROWS_AS((void)is_r_disjoint(L5(), {ps({0, 1}), ps({1, 2})}, 0), ContractError);
}

TEST_CASE("lebesgue number uses the ball convention") {
  CHECK(lebesgue_at_least(L5(), {PointSet::full(5)}, 100));
  std::vector<PointSet> singles;
  for (Point p = 0; p < 5; ++p) singles.push_back(PointSet::single(p));
  CHECK(lebesgue_at_least(L5(), singles, 0));
  CHECK_FALSE(lebesgue_at_least(L5(), singles, 1));
  CHECK_FALSE(lebesgue_at_least(L5(), {ps({0, 1, 2}), ps({2, 3, 4})}, 1));
}

TEST_CASE("refinement is member containment") {
  std::vector<PointSet> singles;
  for (Point p = 0; p < 5; ++p) singles.push_back(PointSet::single(p));
  std::vector<PointSet> coarse = {ps({0, 1}), ps({2, 3, 4})};
  CHECK(refines(singles, coarse));
  CHECK_FALSE(refines({PointSet::full(5)}, coarse));
  CHECK(refines(coarse, coarse));
}

TEST_CASE("covering check sees gaps and stray points") {
  CHECK(covers_space(5, {ps({0, 1, 2}), ps({2, 3, 4})}));
  CHECK_FALSE(covers_space(5, {ps({0, 1}), ps({3, 4})}));
  CHECK_FALSE(covers_space(3, {ps({0, 1, 2, 3})}));
}

TEST_CASE("split cover bookkeeping") {
  SplitCover sc{L5().meta.id(), {{ps({0, 1}), ps({3, 4})}, {ps({2})}}};
  CHECK(sc.n() == 1);
  CHECK(sc.member_count() == 3);
  CHECK(sc.all_members().size() == 3);
  CHECK(covers_space(5, sc.all_members()));
  CHECK_FALSE(sc.is_trivial(5));
  SplitCover trivial{L5().meta.id(), {{PointSet::full(5)}, {}}};
  CHECK(trivial.is_trivial(5));
}

TEST_CASE("restriction keeps positions inside the subset") {
  SplitCover sc{L5().meta.id(), {{ps({0, 1}), ps({2, 3})}, {ps({4})}}};
  SplitCover r = restrict_to_subset(sc, ps({0, 3, 4}));
  REQUIRE(r.families.size() == 2);
  REQUIRE(r.families[0].size() == 2);
  CHECK(r.families[0][0] == PointSet::single(0));
  CHECK(r.families[0][1] == PointSet::single(1));
  CHECK(r.families[1][0] == PointSet::single(2));

  // members missing the subset are dropped
  SplitCover gone = restrict_to_subset(sc, ps({2}));
  CHECK(gone.families[0].size() == 1);
  CHECK(gone.families[1].empty());
}
