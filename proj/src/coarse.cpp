#include "asdim/coarse.hpp"

#include <algorithm>
#include <sstream>

namespace asdim {

PointSet CoarseMap::image(const PointSet& A) const {
  std::vector<Point> out;
  out.reserve(A.size());
  for (Point x : A.items()) out.push_back((*this)(x));
  return PointSet(std::move(out));
}

CoarseMap identity_map(SpaceRef X) {
  if (!X) throw ParamError("no space");
  CoarseMap f{X, X, std::vector<Point>(X->size())};
  for (Point x = 0; x < X->size(); ++x) f.assignment[x] = x;
  return f;
}

CoarseMap constant_map(SpaceRef X, SpaceRef Y, Point y0) {
  if (!X || !Y) throw ParamError("no space");
  if (y0 < 0 || y0 >= Y->size()) throw ParamError("constant value out of range");
  return CoarseMap{X, Y, std::vector<Point>(X->size(), y0)};
}

CoarseMap compose(const CoarseMap& outer, const CoarseMap& inner) {
  if (!inner.target || !outer.source || inner.target->size() != outer.source->size())
    throw ContractError("composition needs inner target matching outer source");
  CoarseMap f{inner.source, outer.target, std::vector<Point>(inner.assignment.size())};
  for (std::size_t x = 0; x < inner.assignment.size(); ++x)
    f.assignment[x] = outer(inner.assignment[x]);
  return f;
}

ValidationReport check_map(const CoarseMap& f) {
  ValidationReport rep;
  rep.add("spaces_present", f.source && f.target);
  if (!f.source || !f.target) return rep;
  rep.add("assignment_size",
          f.assignment.size() == static_cast<std::size_t>(f.source->size()));
  bool in_range = true;
  std::string w;
  for (std::size_t x = 0; x < f.assignment.size(); ++x)
    if (f.assignment[x] < 0 || f.assignment[x] >= f.target->size()) {
      in_range = false;
      w = "f(" + std::to_string(x) + ")=" + std::to_string(f.assignment[x]);
      break;
    }
  rep.add("range", in_range, w);
  return rep;
}

Dist closeness_radius(const CoarseMap& f, const CoarseMap& g) {
  if (f.source->size() != g.source->size() || f.target->size() != g.target->size())
    throw ContractError("closeness needs maps sharing source and target");
  Dist best = 0;
  for (Point x = 0; x < f.source->size(); ++x)
    best = std::max(best, f.target->dist(f(x), g(x)));
  return best;
}

Dist expansion_at(const CoarseMap& f, Dist s) {
  const FiniteMetricSpace& X = *f.source;
  const FiniteMetricSpace& Y = *f.target;
  Dist best = 0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (Point x = 0; x < X.size(); ++x)
    for (Point y = x + 1; y < X.size(); ++y)
      if (X.dist(x, y) <= s) best = std::max(best, Y.dist(f(x), f(y)));
  return best;
}

ExpansionProfile expansion_profile(const CoarseMap& f, const std::vector<Dist>& scales) {
  if (!std::is_sorted(scales.begin(), scales.end()))
    throw ParamError("scales must be sorted ascending");
  ExpansionProfile p;
  p.scale = scales;
  p.rho.reserve(scales.size());
  for (Dist s : scales) p.rho.push_back(expansion_at(f, s));
  return p;
}

ValidationReport check_coarse_embedding(const CoarseMap& f,
                                        const std::vector<Cover>& target_covers) {
  ValidationReport rep;
  rep.merge(check_map(f));
  const FiniteMetricSpace& X = *f.source;
  const FiniteMetricSpace& Y = *f.target;
  for (std::size_t c = 0; c < target_covers.size(); ++c) {
    std::vector<PointSet> preimage;
    for (const auto& m : target_covers[c].members) {
      std::vector<Point> pts;
      for (Point x = 0; x < X.size(); ++x)
        if (m.contains(f(x))) pts.push_back(x);
      if (!pts.empty()) preimage.push_back(PointSet(std::move(pts)));
    }
    const std::string name = "cover_" + std::to_string(c) + "_preimage_bounded";
    if (preimage.empty()) {
      rep.add_failure(name, "no member meets the image");
      continue;
    }
    std::ostringstream w;
    w << "target mesh=" << mesh(Y, target_covers[c].members)
      << " preimage mesh=" << mesh(X, preimage);
    rep.add(name, true, w.str());
  }
  return rep;
}

SeparationIndex::SeparationIndex(const FiniteMetricSpace& X,
                                 const std::vector<SplitCover>& levels, bool validate)
    : points_(X.size()) {
  if (validate) {
    ValidationReport rep = check_defining(X.size(), levels);
    if (!rep.ok()) throw ContractError("sequence is not defining: " + rep.failures().front().name);
  }
  inc_.resize(levels.size());
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const auto members = levels[li].all_members();
    std::vector<int> count(points_, 0);
    for (const auto& m : members)
      for (Point x : m.items()) ++count[x];
    LevelIncidence& L = inc_[li];
    L.offset.assign(points_ + 1, 0);
    for (int p = 0; p < points_; ++p) L.offset[p + 1] = L.offset[p] + count[p];
    L.pool.resize(L.offset.back());
    std::vector<int> cursor(L.offset.begin(), L.offset.end() - 1);
    for (std::size_t mi = 0; mi < members.size(); ++mi)
      for (Point x : members[mi].items()) L.pool[cursor[x]++] = static_cast<int>(mi);
  }
}

bool SeparationIndex::separates_points(int i, Point x, Point y) const {
  const LevelIncidence& L = inc_[i - 1];
  int a = L.offset[x];
  const int ae = L.offset[x + 1];
  int b = L.offset[y];
  const int be = L.offset[y + 1];
  while (a < ae && b < be) {  // member ids per point are ascending
    if (L.pool[a] == L.pool[b]) return false;
    if (L.pool[a] < L.pool[b])
      ++a;
    else
      ++b;
  }
  return true;
}

Dist d_F(const SeparationIndex& idx, Point x, Point y) {
  if (x == y) return 0;
  int lo = 0;
  int hi = idx.stored_levels();
  while (lo < hi) {  // separating levels form a prefix
    int mid = (lo + hi + 1) / 2;
    if (idx.separates_points(mid, x, y))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::vector<std::vector<Dist>> dF_table(const FiniteMetricSpace& X,
                                        const std::vector<SplitCover>& levels) {
  SeparationIndex idx(X, levels);
  const int k = X.size();
  std::vector<std::vector<Dist>> table(k, std::vector<Dist>(k, 0));
#pragma omp parallel for schedule(dynamic)
  for (Point x = 0; x < k; ++x)
    for (Point y = x + 1; y < k; ++y) table[x][y] = d_F(idx, x, y);
  for (Point x = 0; x < k; ++x)
    for (Point y = 0; y < x; ++y) table[x][y] = table[y][x];
  return table;
}

SpaceRef metric_from_sequence(const FiniteMetricSpace& X, const std::vector<SplitCover>& levels,
                              const PointSet& Z) {
  SeparationIndex idx(X, levels);
  const int k = Z.size();
  std::vector<Dist> full(static_cast<std::size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Dist d = d_F(idx, Z[a], Z[b]);
      if (d == 0)
        throw ContractError("level 1 fails to separate " + X.name(Z[a]) + " and " + X.name(Z[b]));
      full[static_cast<std::size_t>(a) * k + b] = d;
      full[static_cast<std::size_t>(b) * k + a] = d;
    }
  std::vector<std::string> names;
  names.reserve(k);
  for (int a = 0; a < k; ++a) names.push_back(X.name(Z[a]));
  std::optional<Point> base;
  if (X.base_point() && Z.contains(*X.base_point()))
    for (int a = 0; a < k; ++a)
      if (Z[a] == *X.base_point()) base = a;
  auto out = std::make_shared<FiniteMetricSpace>(std::move(names), std::move(full), base);
  out->meta = SpaceMeta{"derived", 0, 0, "dF", {}};
  return out;
}

namespace {

bool together_somewhere(const std::vector<PointSet>& members, Point x, Point z) {
  for (const auto& m : members)
    if (m.contains(x) && m.contains(z)) return true;
  return false;
}

PointSet greedy_separated(int universe, const std::vector<PointSet>& members,
                          std::optional<Point> seed) {
  std::vector<Point> picked;
  if (seed) picked.push_back(*seed);
  for (Point x = 0; x < universe; ++x) {
    if (seed && x == *seed) continue;
    bool clear = true;
    for (Point z : picked)
      if (together_somewhere(members, x, z)) {
        clear = false;
        break;
      }
    if (clear) picked.push_back(x);
  }
  return PointSet(std::move(picked));
}

}  // namespace

PointSet maximal_separated_subset(int universe, const std::vector<PointSet>& members) {
  return greedy_separated(universe, members, std::nullopt);
}

PointSet maximal_separated_subset(int universe, const std::vector<PointSet>& members,
                                  Point seed_first) {
  return greedy_separated(universe, members, seed_first);
}

CoarseMap assign_retraction(SpaceRef X, const std::vector<PointSet>& level1, SpaceRef Z,
                            const PointSet& Z_points) {
  if (!X || !Z) throw ParamError("no space");
  if (Z->size() != Z_points.size())
    throw ContractError("subset space size does not match its point list");
  CoarseMap g{X, Z, std::vector<Point>(X->size(), -1)};
  for (int zi = 0; zi < Z_points.size(); ++zi) g.assignment[Z_points[zi]] = zi;
  for (Point x = 0; x < X->size(); ++x) {
    if (g.assignment[x] != -1) continue;
    for (int zi = 0; zi < Z_points.size(); ++zi)
      if (together_somewhere(level1, x, Z_points[zi])) {
        g.assignment[x] = zi;
        break;
      }
    if (g.assignment[x] == -1)
      throw InternalError("retraction found no member joining " + X->name(x) + " to the subset");
  }
  return g;
}

}  // namespace asdim
