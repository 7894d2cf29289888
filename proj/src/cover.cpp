#include "asdim/cover.hpp"

#include <algorithm>

namespace asdim {

PointSet star(const PointSet& a, const std::vector<PointSet>& fam) {
  PointSet out = a;
  for (const auto& f : fam)
    if (f.intersects(a)) out = out.unite(f);
  return out;
}

Cover star_cover(const FiniteMetricSpace& X, const Cover& c) {
  Cover out;
  out.space_id = c.space_id;
  out.members.reserve(X.size());
  for (Point x = 0; x < X.size(); ++x) out.members.push_back(star(PointSet::single(x), c.members));
  return out;
}

bool separates(const std::vector<PointSet>& fam, const PointSet& a, const PointSet& b) {
  return !star(a, fam).intersects(b);
}

Dist mesh(const FiniteMetricSpace& X, const std::vector<PointSet>& members) {
  if (members.empty()) throw ContractError("mesh of an empty cover");
  Dist best = 0;
  for (const auto& m : members) {
    if (m.empty()) throw ContractError("mesh over an empty member");
    best = std::max(best, set_diameter(X, m));
  }
  return best;
}

bool is_r_disjoint(const FiniteMetricSpace& X, const std::vector<PointSet>& fam, Dist r) {
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      if (fam[i].intersects(fam[j])) throw ContractError("family members overlap");
      if (set_distance(X, fam[i], fam[j]) <= r) return false;
    }
  return true;
}

bool lebesgue_at_least(const FiniteMetricSpace& X, const std::vector<PointSet>& members, Dist r) {
  for (Point x = 0; x < X.size(); ++x) {
    PointSet b = ball(X, PointSet::single(x), r);
    bool inside = false;
    for (const auto& m : members)
      if (b.subset_of(m)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

bool refines(const std::vector<PointSet>& c, const std::vector<PointSet>& d) {
  for (const auto& a : c) {
    bool inside = false;
    for (const auto& b : d)
      if (a.subset_of(b)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

bool covers_space(int universe, const std::vector<PointSet>& members) {
  std::vector<char> seen(universe, 0);
  for (const auto& m : members)
    for (Point x : m.items()) {
      if (x < 0 || x >= universe) return false;
      seen[x] = 1;
    }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

SplitCover restrict_to_subset(const SplitCover& sc, const PointSet& z) {
  SplitCover out;
  out.space_id = sc.space_id;
  out.families.resize(sc.families.size());
  for (std::size_t j = 0; j < sc.families.size(); ++j)
    for (const auto& m : sc.families[j]) {
      std::vector<Point> trace;
      for (std::size_t pos = 0; pos < static_cast<std::size_t>(z.size()); ++pos)
        if (m.contains(z[static_cast<int>(pos)])) trace.push_back(static_cast<Point>(pos));
      if (!trace.empty()) out.families[j].push_back(PointSet(std::move(trace)));
    }
  return out;
}

}  // namespace asdim
