#include "asdim/wedge.hpp"

#include <algorithm>
#include <sstream>

namespace asdim {

namespace {

bool together_at(const std::vector<PointSet>& members, Point u, Point v) {
  for (const auto& m : members)
    if (m.contains(u) && m.contains(v)) return true;
  return false;
}

// largest level whose cover separates the pair; scans from the top so it
// needs no monotonicity
Dist combined_dF(const std::vector<std::vector<PointSet>>& per_level, Point u, Point v) {
  if (u == v) return 0;
  for (int i = static_cast<int>(per_level.size()); i >= 1; --i)
    if (!together_at(per_level[i - 1], u, v)) return i;
  return 0;
}

std::vector<std::vector<PointSet>> level_members(const std::vector<SplitCover>& combined) {
  std::vector<std::vector<PointSet>> out;
  out.reserve(combined.size());
  for (const auto& sc : combined) out.push_back(sc.all_members());
  return out;
}

// least level whose scale reaches d, through the analytic tail
int absorbing_level(const GuidedSequence& seq, Dist d) {
  int k = 1;
  while (seq.guide_at(k).r < d) ++k;
  return k;
}

}  // namespace

WedgeSpace build_wedge(const std::vector<WedgeConstituent>& parts) {
  if (parts.size() < 2) throw ParamError("wedge needs at least two constituents");
  WedgeSpace w;
  for (const auto& part : parts) {
    if (!part.space || !part.seq.space) throw ParamError("constituent without a space");
    if (part.seq.space->size() != part.space->size())
      throw ContractError("constituent sequence is over a different space");
    if (!part.space->base_point()) throw ParamError("wedge constituents need base points");
    if (!part.seq.respects_base_point)
      throw ContractError("constituent sequence does not respect the base point");
    ValidationReport rep = check_witnessing(part.seq);
    if (!rep.ok())
      throw ContractError("constituent fails witnessing: " + rep.failures().front().name);

    const Point b = *part.space->base_point();
    const PointSet Z = maximal_separated_subset(
        part.space->size(), part.seq.levels.front().cover.all_members(), b);
    const int kz = Z.size();
    std::vector<std::string> names;
    names.reserve(kz);
    std::vector<Dist> full(static_cast<std::size_t>(kz) * kz, 0);
    std::optional<Point> base;
    for (int a = 0; a < kz; ++a) {
      names.push_back(part.space->name(Z[a]));
      if (Z[a] == b) base = a;
      for (int c = 0; c < kz; ++c)
        full[static_cast<std::size_t>(a) * kz + c] = part.space->dist(Z[a], Z[c]);
    }
    auto sub = std::make_shared<FiniteMetricSpace>(std::move(names), std::move(full), base);
    sub->meta = SpaceMeta{"derived", 0, 0, "wedge_part", {}};

    GuidedSequence seq;
    seq.space = sub;
    seq.mode = part.seq.mode;
    seq.respects_base_point = true;
    seq.n_raised = part.seq.n_raised;
    for (const auto& lv : part.seq.levels)
      seq.levels.push_back({restrict_to_subset(lv.cover, Z), lv.guide});
    w.parts.push_back({sub, std::move(seq)});
  }

  w.points = 1;
  w.origin.push_back({0, *w.parts[0].space->base_point()});
  w.to_wedge.resize(w.parts.size());
  for (std::size_t a = 0; a < w.parts.size(); ++a) {
    const Point b = *w.parts[a].space->base_point();
    w.to_wedge[a].resize(w.parts[a].space->size());
    for (Point local = 0; local < w.parts[a].space->size(); ++local) {
      if (local == b) {
        w.to_wedge[a][local] = 0;
      } else {
        w.to_wedge[a][local] = w.points;
        w.origin.push_back({static_cast<int>(a), local});
        ++w.points;
      }
    }
  }
  return w;
}

std::vector<SplitCover> combine_sequences(const WedgeSpace& w) {
  int L = 0;
  int nmax = 0;
  for (const auto& part : w.parts) {
    L = std::max(L, part.seq.stored_levels());
    nmax = std::max(nmax, part.seq.n());
  }
  std::vector<SplitCover> out;
  out.reserve(L);
  for (int i = 1; i <= L; ++i) {
    SplitCover sc;
    sc.space_id = "wedge";
    sc.families.resize(nmax + 1);
    for (int j = 0; j <= nmax; ++j) {
      PointSet merged;
      std::vector<PointSet> rest;
      for (std::size_t a = 0; a < w.parts.size(); ++a) {
        const SplitCover cov = w.parts[a].seq.cover_at(i);
        if (j >= static_cast<int>(cov.families.size())) continue;
        for (const auto& m : cov.families[j]) {
          std::vector<Point> ids;
          ids.reserve(m.size());
          for (Point local : m.items()) ids.push_back(w.to_wedge[a][local]);
          PointSet t(std::move(ids));
          if (t.contains(0))
            merged = merged.unite(t);
          else
            rest.push_back(std::move(t));
        }
      }
      if (!merged.empty()) sc.families[j].push_back(std::move(merged));
      for (auto& m : rest) sc.families[j].push_back(std::move(m));
    }
    out.push_back(std::move(sc));
  }
  return out;
}

ValidationReport check_wedge(const WedgeSpace& w, const std::vector<SplitCover>& combined) {
  ValidationReport rep = check_defining(w.points, combined);
  const auto members = level_members(combined);

  {
    bool ok = true;
    std::string witness;
    if (!members.empty())
      for (const auto& m : members.front())
        if (m.size() > 1) {
          ok = false;
          witness = "member " + format_points(m) + " holds two wedge points";
          break;
        }
    rep.add("level1_separates", ok, witness);
  }

  for (std::size_t a = 0; a < w.parts.size(); ++a) {
    const FiniteMetricSpace& P = *w.parts[a].space;
    const GuidedSequence& seq = w.parts[a].seq;
    const std::string tag = "part" + std::to_string(a) + "_";

    bool upper = true;
    bool lower = true;
    std::string uw;
    std::string lw;
    for (Point u = 0; u < P.size(); ++u)
      for (Point v = u + 1; v < P.size(); ++v) {
        const Dist d_local = P.dist(u, v);
        const Dist d = combined_dF(members, w.to_wedge[a][u], w.to_wedge[a][v]);
        const int k = absorbing_level(seq, d_local);
        if (upper && d > k - 1) {
          upper = false;
          std::ostringstream o;
          o << "pair (" << u << ',' << v << ") d_F=" << d << " exceeds " << k - 1;
          uw = o.str();
        }
        if (lower && d_local > seq.guide_at(static_cast<int>(d) + 1).R) {
          lower = false;
          std::ostringstream o;
          o << "pair (" << u << ',' << v << ") native " << d_local << " exceeds R at level "
            << d + 1;
          lw = o.str();
        }
      }
    rep.add(tag + "dF_upper", upper, uw);
    rep.add(tag + "dF_lower", lower, lw);

    bool restrict_ok = true;
    std::string rw;
    std::vector<Point> part_ids(w.to_wedge[a].begin(), w.to_wedge[a].end());
    const PointSet part_set{std::move(part_ids)};
    for (int i = 1; i <= static_cast<int>(combined.size()) && restrict_ok; ++i) {
      const SplitCover cov = seq.cover_at(i);
      for (std::size_t j = 0; j < combined[i - 1].families.size() && restrict_ok; ++j) {
        // the merged base member mixes points of every part, so the identity
        // is only meaningful away from it; drop base members on both sides
        std::vector<PointSet> traces;
        for (const auto& m : combined[i - 1].families[j]) {
          if (m.contains(0)) continue;
          PointSet t = m.intersect(part_set);
          if (!t.empty()) traces.push_back(std::move(t));
        }
        std::vector<PointSet> expect;
        if (j < cov.families.size())
          for (const auto& m : cov.families[j]) {
            std::vector<Point> ids;
            ids.reserve(m.size());
            for (Point local : m.items()) ids.push_back(w.to_wedge[a][local]);
            PointSet t{std::move(ids)};
            if (!t.contains(0)) expect.push_back(std::move(t));
          }
        std::sort(traces.begin(), traces.end());
        std::sort(expect.begin(), expect.end());
        if (traces != expect) {
          restrict_ok = false;
          rw = "level " + std::to_string(i) + " family " + std::to_string(j);
        }
      }
    }
    rep.add(tag + "restriction", restrict_ok, rw);
  }

  {
    bool ok = true;
    std::string cw;
    const int L = static_cast<int>(combined.size());
    for (Point u = 1; u < w.points && ok; ++u)
      for (Point v = u + 1; v < w.points && ok; ++v) {
        const auto [au, lu] = w.origin[u];
        const auto [av, lv] = w.origin[v];
        if (au == av) continue;
        int absorbed = 0;
        for (int i = 1; i <= L; ++i)
          if (together_at(members[i - 1], u, v)) {
            absorbed = i;
            break;
          }
        const Dist du = w.parts[au].space->dist(lu, *w.parts[au].space->base_point());
        const Dist dv = w.parts[av].space->dist(lv, *w.parts[av].space->base_point());
        const int bound = std::min(
            std::max(absorbing_level(w.parts[au].seq, du), absorbing_level(w.parts[av].seq, dv)),
            L);
        if (absorbed == 0 || absorbed > bound) {
          ok = false;
          std::ostringstream o;
          o << "pair (" << u << ',' << v << ") absorbed at " << absorbed << " bound " << bound;
          cw = o.str();
        }
      }
    rep.add("cross_absorption", ok, cw);
  }
  return rep;
}

ValidationReport check_wedge_images(const WedgeSpace& w,
                                    const std::vector<SplitCover>& combined,
                                    const CoarseMap& f) {
  if (f.assignment.size() != static_cast<std::size_t>(w.points) || !f.target)
    throw ContractError("map does not cover the wedge");
  const auto members = level_members(combined);
  const FiniteMetricSpace& T = *f.target;
  for (std::size_t a = 0; a < w.parts.size(); ++a)
    for (Point u = 0; u < w.parts[a].space->size(); ++u)
      for (Point v = u + 1; v < w.parts[a].space->size(); ++v) {
        const Point wu = w.to_wedge[a][u];
        const Point wv = w.to_wedge[a][v];
        if (T.dist(f(wu), f(wv)) != combined_dF(members, wu, wv))
          throw ContractError("map is not isometric on part " + std::to_string(a));
      }

  ValidationReport rep;
  for (int i = 1; i <= static_cast<int>(combined.size()); ++i) {
    bool plain_ok = true;
    bool base_ok = true;
    std::string pw;
    std::string bw;
    for (const auto& m : members[i - 1]) {
      Dist diam = 0;
      const auto& v = m.items();
      for (std::size_t x = 0; x < v.size(); ++x)
        for (std::size_t y = x + 1; y < v.size(); ++y)
          diam = std::max(diam, T.dist(f(v[x]), f(v[y])));
      if (m.contains(0)) {
        if (diam > 2 * (i - 1) && base_ok) {
          base_ok = false;
          bw = "image diameter " + std::to_string(diam);
        }
      } else if (diam > i - 1 && plain_ok) {
        plain_ok = false;
        pw = "member " + format_points(m) + " image diameter " + std::to_string(diam);
      }
    }
    const std::string tag = "L" + std::to_string(i) + "_";
    rep.add(tag + "plain_image_diam", plain_ok, pw);
    rep.add(tag + "base_image_diam", base_ok, bw);
  }
  return rep;
}

CoarseMap canonical_wedge_isometry(const WedgeSpace& w,
                                   const std::vector<SplitCover>& combined) {
  const auto members = level_members(combined);
  const int k = w.points;
  std::vector<std::string> names;
  names.reserve(k);
  names.push_back("base");
  for (Point u = 1; u < k; ++u)
    names.push_back(std::to_string(w.origin[u].first) + ":" +
                    w.parts[w.origin[u].first].space->name(w.origin[u].second));
  std::vector<Dist> full(static_cast<std::size_t>(k) * k, 0);
  for (Point u = 0; u < k; ++u)
    for (Point v = u + 1; v < k; ++v) {
      Dist d;
      if (u == 0 || w.origin[u].first == w.origin[v].first)
        d = combined_dF(members, u, v);
      else
        d = combined_dF(members, u, 0) + combined_dF(members, 0, v);
      full[static_cast<std::size_t>(u) * k + v] = d;
      full[static_cast<std::size_t>(v) * k + u] = d;
    }
  auto W = std::make_shared<FiniteMetricSpace>(std::move(names), std::move(full), 0);
  W->meta = SpaceMeta{"derived", 0, 0, "wedge", {}};
  CoarseMap f{W, W, std::vector<Point>(k)};
  for (Point u = 0; u < k; ++u) f.assignment[u] = u;
  return f;
}

}  // namespace asdim
