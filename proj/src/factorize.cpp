#include "asdim/factorize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace asdim {

SplitCover TaggedCover::untag(const std::string& space_id) const {
  SplitCover out;
  out.space_id = space_id;
  out.families.resize(families.size());
  for (std::size_t j = 0; j < families.size(); ++j)
    for (const auto& m : families[j].members) out.families[j].push_back(m.points);
  return out;
}

std::vector<Cover> build_target_covers(const CoarseMap& f, const GuidedSequence& seqX,
                                       int levels) {
  const FiniteMetricSpace& Y = *f.target;
  std::vector<Cover> out;
  out.reserve(levels);
  for (int i = 1; i <= levels; ++i) {
    std::map<Point, PointSet> by_anchor;
    for (const auto& m : seqX.cover_at(i).all_members()) {
      PointSet img = f.image(m);
      Point anchor = img[0];
      auto it = by_anchor.find(anchor);
      if (it == by_anchor.end())
        by_anchor.emplace(anchor, img);
      else
        it->second = it->second.unite(img);
    }
    Cover c;
    c.space_id = Y.meta.id();
    std::vector<char> covered(Y.size(), 0);
    for (auto& [anchor, merged] : by_anchor) {
      for (Point y : merged.items()) covered[y] = 1;
      c.members.push_back(std::move(merged));
    }
    for (Point y = 0; y < Y.size(); ++y)
      if (!covered[y]) c.members.push_back(PointSet::single(y));
    out.push_back(std::move(c));
  }
  return out;
}

TaggedCover build_F0(const CoarseMap& f, const GuidedSequence& seqX, const Cover& target,
                     int i) {
  const SplitCover level = seqX.cover_at(i);
  TaggedCover out;
  out.families.resize(level.families.size());
  for (std::size_t j = 0; j < level.families.size(); ++j) {
    std::map<int, TaggedMember> groups;  // keyed by target index, so ascending
    for (std::size_t mi = 0; mi < level.families[j].size(); ++mi) {
      const PointSet img = f.image(level.families[j][mi]);
      int assigned = -1;
      for (std::size_t t = 0; t < target.members.size(); ++t)
        if (img.subset_of(target.members[t])) {
          assigned = static_cast<int>(t);
          break;
        }
      if (assigned < 0)
        throw ContractError("level image fits no target member at level " + std::to_string(i));
      TaggedMember& g = groups[assigned];
      g.points = g.points.unite(level.families[j][mi]);
      g.constituents.push_back(static_cast<int>(mi));
    }
    for (auto& [t, g] : groups) out.families[j].members.push_back(std::move(g));
  }
  return out;
}

std::vector<TaggedMember> split_by(const FiniteMetricSpace& X, const TaggedMember& A,
                                   const std::vector<PointSet>& source_members,
                                   const TaggedFamily& basis, const SplitContext& ctx) {
  const PointSet shell = ball(X, PointSet::single(ctx.b), sat_mul(ctx.i, ctx.r_m));
  std::vector<int> rest;
  TaggedMember c1;
  for (int c : A.constituents) {
    if (source_members[c].intersects(shell)) {
      c1.points = c1.points.unite(source_members[c]);
      c1.constituents.push_back(c);
    } else {
      rest.push_back(c);
    }
  }

  const Ratio close = Ratio::tenth(ctx.r_next);
  std::vector<TaggedMember> contained(basis.members.size());
  std::vector<TaggedMember> nearby(basis.members.size());
  TaggedMember c4;
  for (int c : rest) {
    int in_at = -1;
    for (std::size_t bi = 0; bi < basis.members.size(); ++bi)
      if (source_members[c].subset_of(basis.members[bi].points)) {
        in_at = static_cast<int>(bi);
        break;
      }
    if (in_at >= 0) {
      contained[in_at].points = contained[in_at].points.unite(source_members[c]);
      contained[in_at].constituents.push_back(c);
      continue;
    }
    int near_at = -1;
    for (std::size_t bi = 0; bi < basis.members.size(); ++bi)
      if (is_r_close(X, source_members[c], basis.members[bi].points, close)) {
        if (near_at >= 0)
          throw InternalError("constituent close to two basis members, scales too tight");
        near_at = static_cast<int>(bi);
      }
    if (near_at >= 0) {
      nearby[near_at].points = nearby[near_at].points.unite(source_members[c]);
      nearby[near_at].constituents.push_back(c);
    } else {
      c4.points = c4.points.unite(source_members[c]);
      c4.constituents.push_back(c);
    }
  }

  std::vector<TaggedMember> out;
  if (!c1.constituents.empty()) out.push_back(std::move(c1));
  for (auto& m : contained)
    if (!m.constituents.empty()) out.push_back(std::move(m));
  for (auto& m : nearby)
    if (!m.constituents.empty()) out.push_back(std::move(m));
  if (!c4.constituents.empty()) out.push_back(std::move(c4));
  return out;
}

bool FactorizationState::has_cell(int p, int i) const {
  return p >= 0 && i >= 1 && p < static_cast<int>(rows.size()) &&
         i - 1 < static_cast<int>(rows[p].size());
}

const TaggedCover& FactorizationState::cell(int p, int i) const {
  if (!has_cell(p, i))
    throw ContractError("cell (" + std::to_string(p) + "," + std::to_string(i) + ") not built");
  return rows[p][i - 1];
}

int default_horizon(const GuidedSequence& seqX) {
  if (!seqX.space->base_point()) throw ParamError("factorization needs a base point");
  const Dist ecc = seqX.space->eccentricity(*seqX.space->base_point());
  int m = 0;
  while (seqX.guide_at(1 + m).r < ecc) ++m;
  return m + seqX.stored_levels();
}

FactorizationState init_factorization(const CoarseMap& f, const GuidedSequence& seqX,
                                      int m_max) {
  if (!f.source || f.source->size() != seqX.space->size())
    throw ContractError("map source does not match the sequence space");
  {
    ValidationReport rep = check_map(f);
    if (!rep.ok()) throw ContractError("map fails validation: " + rep.failures().front().name);
  }
  {
    ValidationReport rep = check_witnessing(seqX);
    if (!rep.ok())
      throw ContractError("sequence fails witnessing: " + rep.failures().front().name);
  }
  if (!seqX.space->base_point()) throw ParamError("factorization needs a base point");
  if (m_max < 0) m_max = default_horizon(seqX);
  if (m_max < 1) throw ParamError("horizon must be at least 1");

  FactorizationState st;
  st.f = f;
  st.seqX = seqX;
  st.b = *seqX.space->base_point();
  st.m_max = m_max;
  st.targets = build_target_covers(f, seqX, m_max);
  st.rows.resize(1);
  st.rows[0].push_back(build_F0(f, seqX, st.targets[0], 1));
  st.last_diagonal = 1;
  return st;
}

void advance_diagonal(FactorizationState& st, int m) {
  if (m != st.last_diagonal) throw ContractError("diagonals must advance in order");
  if (m + 1 > st.m_max) throw ParamError("diagonal beyond the configured horizon");

  st.rows[0].push_back(build_F0(st.f, st.seqX, st.targets[m], m + 1));
  if (static_cast<int>(st.rows.size()) < m + 1) st.rows.resize(m + 1);

  const FiniteMetricSpace& X = *st.seqX.space;
  for (int i = m; i >= 1; --i) {
    const int p = m - i;
    if (st.seqX.mode == ScheduleMode::strict_100 &&
        sat_mul(10, st.seqX.guide_at(i).R) >= st.seqX.guide_at(i + 1).r)
      throw ContractError("scale gap too small at level " + std::to_string(i));
    const TaggedCover& source = st.cell(p, i);
    const TaggedCover& basis = st.cell(p, i + 1);  // built just before, sum m+1
    SplitContext ctx{st.b, i, p, st.seqX.guide_at(m).r, st.seqX.guide_at(i + 1).r};
    const SplitCover level_i = st.seqX.cover_at(i);
    TaggedCover next;
    next.families.resize(source.families.size());
    for (std::size_t j = 0; j < source.families.size(); ++j) {
      const std::vector<PointSet>& members_ij = level_i.families[j];
      std::vector<TaggedMember> cur = source.families[j].members;
      for (const auto& bf : basis.families) {
        std::vector<TaggedMember> split;
        for (const auto& A : cur) {
          auto pieces = split_by(X, A, members_ij, bf, ctx);
          split.insert(split.end(), std::make_move_iterator(pieces.begin()),
                       std::make_move_iterator(pieces.end()));
        }
        cur = std::move(split);
      }
      next.families[j].members = std::move(cur);
    }
    st.rows[p + 1].push_back(std::move(next));
  }
  st.last_diagonal = m + 1;
}

void run_sweep(FactorizationState& st) {
  while (st.last_diagonal < st.m_max) advance_diagonal(st, st.last_diagonal);
}

namespace {

std::vector<std::vector<PointSet>> sorted_families(const SplitCover& sc) {
  std::vector<std::vector<PointSet>> out = sc.families;
  for (auto& fam : out) std::sort(fam.begin(), fam.end());
  return out;
}

}  // namespace

StabilizedLimit stabilized_limit(const FactorizationState& st) {
  const GuidedSequence& seq = st.seqX;
  const Dist ecc = seq.space->eccentricity(st.b);
  const int L = seq.stored_levels();
  const std::string space_id = seq.space->meta.id();

  std::vector<int> p_star(L, 0);
  int needed = 0;
  for (int i = 1; i <= L; ++i) {
    int p = 0;
    while (sat_mul(i, seq.guide_at(i + p).r) < ecc) ++p;
    p_star[i - 1] = p;
    needed = std::max(needed, p + i);
  }
  for (int i = 1; i <= L; ++i)
    if (!st.has_cell(p_star[i - 1], i))
      throw HorizonError("sweep too shallow to stabilize level " + std::to_string(i), needed);

  StabilizedLimit out;
  out.p_star = p_star;
  for (int i = 1; i <= L; ++i)
    out.levels.push_back(st.cell(p_star[i - 1], i).untag(space_id));
  for (int i = 1; i <= L; ++i) {
    const auto limit_sorted = sorted_families(out.levels[i - 1]);
    for (int p = p_star[i - 1] + 1; st.has_cell(p, i); ++p) {
      bool same = sorted_families(st.cell(p, i).untag(space_id)) == limit_sorted;
      out.certificate.add(
          "L" + std::to_string(i) + "_stage" + std::to_string(p) + "_agrees", same);
    }
  }
  return out;
}

Factorization extract_factorization(const CoarseMap& f, const std::vector<SplitCover>& limit) {
  if (limit.empty()) throw ContractError("no limit levels");
  SpaceRef X = f.source;
  const std::vector<PointSet> level1 = limit.front().all_members();
  Factorization out;
  out.Z_points = maximal_separated_subset(X->size(), level1);
  out.Z = metric_from_sequence(*X, limit, out.Z_points);
  out.g = assign_retraction(X, level1, out.Z, out.Z_points);
  out.h = CoarseMap{out.Z, f.target, {}};
  out.h.assignment.reserve(out.Z_points.size());
  for (Point z : out.Z_points.items()) out.h.assignment.push_back(f(z));
  return out;
}

FactorizationResult exact_factorization(const CoarseMap& f, const Factorization& zgh) {
  SpaceRef X = f.source;
  SpaceRef Y = f.target;
  SpaceRef Z = zgh.Z;

  std::vector<std::pair<Point, Point>> pairs;
  pairs.reserve(X->size());
  for (Point x = 0; x < X->size(); ++x) pairs.emplace_back(f(x), zgh.g(x));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  const int k = static_cast<int>(pairs.size());
  std::vector<std::string> names;
  names.reserve(k);
  std::vector<Dist> full(static_cast<std::size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a) {
    names.push_back("(" + Y->name(pairs[a].first) + "," + Z->name(pairs[a].second) + ")");
    for (int b = 0; b < k; ++b)
      full[static_cast<std::size_t>(a) * k + b] =
          std::max(Y->dist(pairs[a].first, pairs[b].first),
                   Z->dist(pairs[a].second, pairs[b].second));
  }
  auto lookup = [&pairs](Point y, Point z) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(y, z));
    return static_cast<Point>(it - pairs.begin());
  };
  std::optional<Point> base;
  if (X->base_point()) base = lookup(f(*X->base_point()), zgh.g(*X->base_point()));
  auto Zp = std::make_shared<FiniteMetricSpace>(std::move(names), std::move(full), base);
  Zp->meta = SpaceMeta{"derived", 0, 0, "graph", {}};

  FactorizationResult res;
  res.Z = Z;
  res.Z_points = zgh.Z_points;
  res.g = zgh.g;
  res.h = zgh.h;
  res.Zprime = Zp;
  res.Zprime_pairs = pairs;
  res.gprime = CoarseMap{X, Zp, std::vector<Point>(X->size())};
  for (Point x = 0; x < X->size(); ++x) res.gprime.assignment[x] = lookup(f(x), zgh.g(x));
  res.hprime = CoarseMap{Zp, Y, std::vector<Point>(k)};
  res.pi = CoarseMap{Zp, Z, std::vector<Point>(k)};
  for (int a = 0; a < k; ++a) {
    res.hprime.assignment[a] = pairs[a].first;
    res.pi.assignment[a] = pairs[a].second;
  }
  return res;
}

ValidationReport check_pi_containment(const FactorizationResult& res,
                                      const std::vector<PointSet>& Z_cover) {
  ValidationReport rep;
  const CoarseMap& g = res.g;
  for (std::size_t mi = 0; mi < Z_cover.size(); ++mi) {
    const PointSet& B = Z_cover[mi];
    std::vector<Point> image_pts;
    for (Point x = 0; x < g.source->size(); ++x)
      if (B.contains(g(x))) image_pts.push_back(res.hprime(res.gprime(x)));
    PointSet fgB(std::move(image_pts));
    bool ok = true;
    std::string w;
    for (int zp = 0; zp < res.Zprime->size(); ++zp) {
      if (!B.contains(res.pi(zp))) continue;
      if (!fgB.contains(res.hprime(zp)) || !B.contains(res.pi(zp))) {
        ok = false;
        w = "point " + res.Zprime->name(zp) + " escapes member " + std::to_string(mi);
        break;
      }
    }
    rep.add("member_" + std::to_string(mi) + "_pi_containment", ok, w);
  }
  return rep;
}

}  // namespace asdim
