#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asdim/json_io.hpp"
#include "asdim/space.hpp"
#include "asdim/types.hpp"
#include "corpus.hpp"

using namespace asdim;

TEST_CASE("saturating arithmetic never wraps") {
  CHECK(sat_add(1, 2) == 3);
  CHECK(sat_add(kInfDist, 1) == kInfDist);
  CHECK(sat_add(kInfDist - 1, 5) == kInfDist);
  CHECK(sat_mul(3, 4) == 12);
  CHECK(sat_mul(0, kInfDist) == 0);
  CHECK(sat_mul(kInfDist / 2, 3) == kInfDist);
  CHECK(sat_mul(kInfDist, kInfDist) == kInfDist);
}

TEST_CASE("rational tenth comparisons are exact") {
  CHECK(dist_le(1, Ratio::tenth(10)));
  CHECK_FALSE(dist_le(2, Ratio::tenth(10)));
  CHECK(dist_le(0, Ratio::tenth(1)));
  CHECK_FALSE(dist_le(1, Ratio::tenth(9)));
  CHECK(dist_le(10, Ratio::tenth(100)));
  CHECK_FALSE(dist_le(kInfDist, Ratio::tenth(kInfDist)));
}

TEST_CASE("point sets sort, dedup and compare by value") {
  PointSet a(std::vector<Point>{3, 1, 3, 2});
  CHECK(a.size() == 3);
  CHECK(a.items() == std::vector<Point>{1, 2, 3});
  CHECK(a.contains(2));
  CHECK_FALSE(a.contains(0));

  PointSet b(std::vector<Point>{2, 4});
  CHECK(a.intersects(b));
  CHECK(a.intersect(b) == PointSet::single(2));
  CHECK(a.unite(b) == corpus::ps({1, 2, 3, 4}));
  CHECK(a.subtract(b) == corpus::ps({1, 3}));
  CHECK(PointSet::single(2).subset_of(a));
  CHECK_FALSE(a.subset_of(b));

  PointSet c = PointSet::full(3);
  CHECK(c == corpus::ps({0, 1, 2}));
  c.add(5);
  c.add(1);
  CHECK(c == corpus::ps({0, 1, 2, 5}));
}

TEST_CASE("path space distances and base point") {
  FiniteMetricSpace X = make_path(5);
  CHECK(X.size() == 5);
  CHECK(X.dist(0, 4) == 4);
  CHECK(X.dist(2, 2) == 0);
  CHECK(X.diameter() == 4);
  CHECK(X.eccentricity(0) == 4);
  CHECK(X.eccentricity(2) == 2);
  REQUIRE(X.base_point().has_value());
  CHECK(*X.base_point() == 0);
  CHECK(X.meta.id() == "path(5,1)");

  FiniteMetricSpace wide = make_path(3, 5);
  CHECK(wide.dist(0, 2) == 10);
  CHECK(wide.meta.id() == "path(3,5)");
}

TEST_CASE("grid spaces in both norms") {
  FiniteMetricSpace inf = make_grid(4, 4, GridNorm::linf);
  FiniteMetricSpace one = make_grid(4, 4, GridNorm::l1);
  // point index is y*w + x
  const Point corner = 15;
  CHECK(inf.dist(0, corner) == 3);
  CHECK(one.dist(0, corner) == 6);
  CHECK(inf.dist(1, 4) == 1);
  CHECK(one.dist(1, 4) == 2);
  CHECK(inf.meta.id() == "grid(4,4,linf)");
  CHECK(one.meta.id() == "grid(4,4,l1)");
  CHECK(validate_metric(inf).ok());
  CHECK(validate_metric(one).ok());
}

TEST_CASE("tree space walks through the lowest common ancestor") {
  FiniteMetricSpace T = make_tree(2, 2);
  CHECK(T.size() == 7);
  CHECK(T.dist(0, 3) == 2);
  CHECK(T.dist(3, 4) == 2);
  CHECK(T.dist(3, 5) == 4);
  CHECK(T.dist(1, 2) == 2);
  CHECK(T.meta.id() == "tree(2,2)");
  CHECK(validate_metric(T).ok());
}

TEST_CASE("random spaces are reproducible metrics") {
  FiniteMetricSpace A = make_random(12, 8, 42);
  FiniteMetricSpace B = make_random(12, 8, 42);
  FiniteMetricSpace C = make_random(12, 8, 43);
  CHECK(validate_metric(A).ok());
  CHECK(A.diameter() <= 8);
  bool same = true, other_same = true;
  for (Point x = 0; x < 12; ++x)
    for (Point y = 0; y < 12; ++y) {
      same = same && A.dist(x, y) == B.dist(x, y);
      other_same = other_same && A.dist(x, y) == C.dist(x, y);
    }
  CHECK(same);
  CHECK_FALSE(other_same);
  CHECK(A.meta.id() == "random(12,8,seed=42)");
}

TEST_CASE("validate_metric rejects broken axioms") {
  FiniteMetricSpace bad_triangle =
      FiniteMetricSpace::from_lower_triangular({"a", "b", "c"}, {1, 5, 1}, std::nullopt);
  ValidationReport rep = validate_metric(bad_triangle);
  CHECK_FALSE(rep.ok());
  CHECK(rep.failures().front().name == "triangle");

  FiniteMetricSpace asym({"a", "b"}, {0, 1, 2, 0}, std::nullopt);
  CHECK_FALSE(validate_metric(asym).ok());

  FiniteMetricSpace zero_off({"a", "b"}, {0, 0, 0, 0}, std::nullopt);
  ValidationReport zrep = validate_metric(zero_off);
  CHECK_FALSE(zrep.ok());
}

TEST_CASE("lower triangular round trip") {
  FiniteMetricSpace X = make_grid(3, 3, GridNorm::l1);
  FiniteMetricSpace Y =
      FiniteMetricSpace::from_lower_triangular(X.names(), X.lower_triangular(), X.base_point());
  REQUIRE(Y.size() == X.size());
  for (Point a = 0; a < X.size(); ++a)
    for (Point b = 0; b < X.size(); ++b) CHECK(Y.dist(a, b) == X.dist(a, b));
}

TEST_CASE("balls and set distances on the path") {
  FiniteMetricSpace X = make_path(5);
  CHECK(ball(X, 2, 1) == corpus::ps({1, 2, 3}));
  CHECK(ball(X, 0, 0) == PointSet::single(0));
  CHECK(ball(X, corpus::ps({0, 4}), 1) == corpus::ps({0, 1, 3, 4}));
  CHECK(point_to_set(X, 0, corpus::ps({2, 3})) == 2);
  CHECK(set_distance(X, corpus::ps({0, 1}), corpus::ps({3, 4})) == 2);
  CHECK(set_diameter(X, corpus::ps({1, 4})) == 3);
  CHECK(set_diameter(X, PointSet::single(2)) == 0);
  CHECK(is_r_close(X, corpus::ps({0, 1}), corpus::ps({0, 1, 2}), 1));
  CHECK_FALSE(is_r_close(X, corpus::ps({0, 3}), PointSet::single(0), 2));
  CHECK(is_r_close(X, PointSet::single(0), PointSet::single(0), Ratio::tenth(1)));
  CHECK_FALSE(is_r_close(X, PointSet::single(1), PointSet::single(0), Ratio::tenth(9)));
}

TEST_CASE("space json round trip preserves everything") {
  FiniteMetricSpace X = make_random(9, 6, 5);
  Json j = space_to_json(X);
  SpaceRef Y = space_from_json(j);
  REQUIRE(Y->size() == X.size());
  for (Point a = 0; a < X.size(); ++a)
    for (Point b = 0; b < X.size(); ++b) CHECK(Y->dist(a, b) == X.dist(a, b));
  CHECK(Y->base_point() == X.base_point());
  CHECK(Y->meta == X.meta);
  CHECK(canonical_dump(space_to_json(*Y)) == canonical_dump(j));
}

TEST_CASE("malformed space json raises data errors") {
  CHECK_THROWS_AS((void)space_from_json(Json::parse("{}")), DataError);
  Json j = space_to_json(make_path(3));
  j["dist"] = Json::array({1});
  CHECK_THROWS_AS((void)space_from_json(j), DataError);
}
