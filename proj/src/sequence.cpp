#include "asdim/sequence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace asdim {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string level_tag(int i) { return "L" + std::to_string(i) + "_"; }

}  // namespace

const char* schedule_name(ScheduleMode m) {
  return m == ScheduleMode::strict_100 ? "strict_100" : "lax_2";
}

std::optional<ScheduleMode> schedule_from_name(const std::string& s) {
  if (s == "strict_100") return ScheduleMode::strict_100;
  if (s == "lax_2") return ScheduleMode::lax_2;
  return std::nullopt;
}

Dist next_scale(ScheduleMode mode, int i, Dist R) {
  Dist factor = mode == ScheduleMode::strict_100 ? 100LL * i + 1 : 2;
  return sat_add(sat_mul(factor, R), 1);
}

SplitCover GuidedSequence::cover_at(int i) const {
  if (i < 1) throw ParamError("levels are 1-based");
  if (i <= stored_levels()) return levels[i - 1].cover;
  SplitCover sc;
  sc.space_id = space->meta.id();
  sc.families.assign(n() + 1, {});
  sc.families[0].push_back(PointSet::full(space->size()));
  return sc;
}

GuidePair GuidedSequence::guide_at(int i) const {
  if (i < 1) throw ParamError("levels are 1-based");
  if (i <= stored_levels()) return levels[i - 1].guide;
  const Dist diam = space->diameter();
  GuidePair g{std::max<Dist>(diam, 2), 1};
  int have = 1;
  if (!levels.empty()) {
    g = levels.back().guide;
    have = stored_levels();
  }
  while (have < i) {
    Dist r = next_scale(mode, have, g.R);
    g = GuidePair{std::max(diam, sat_add(r, 1)), r};
    ++have;
  }
  return g;
}

bool GuidedSequence::trivial_at(int i) const {
  if (i > stored_levels()) return true;
  return levels[i - 1].cover.is_trivial(space->size());
}

SplitCover expand_cover(const FiniteMetricSpace& X, const SplitCover& sc, Dist r) {
  for (const auto& fam : sc.families)
    if (!is_r_disjoint(X, fam, sat_mul(3, r)))
      throw ContractError("expansion needs (3r)-disjoint families");
  SplitCover out;
  out.space_id = sc.space_id;
  out.families.resize(sc.families.size());
  for (std::size_t j = 0; j < sc.families.size(); ++j)
    for (const auto& m : sc.families[j]) out.families[j].push_back(ball(X, m, r));
  return out;
}

SplitCover respect_basepoint(const FiniteMetricSpace& X, const SplitCover& sc, Point b, Dist r) {
  const PointSet near = ball(X, PointSet::single(b), sat_mul(2, r));
  const PointSet core = ball(X, PointSet::single(b), r);
  SplitCover out;
  out.space_id = sc.space_id;
  out.families.resize(sc.families.size());
  for (std::size_t j = 0; j < sc.families.size(); ++j) {
    PointSet merged = core;
    std::vector<PointSet> rest;
    for (const auto& m : sc.families[j]) {
      if (m.intersects(near))
        merged = merged.unite(m);
      else
        rest.push_back(m);
    }
    out.families[j].push_back(merged);
    for (auto& m : rest) out.families[j].push_back(std::move(m));
  }
  return out;
}

const char* splitter_name(SplitterKind k) {
  switch (k) {
    case SplitterKind::brick: return "brick";
    case SplitterKind::greedy: return "greedy";
    default: return "exact";
  }
}

std::optional<SplitterKind> splitter_from_name(const std::string& s) {
  if (s == "brick") return SplitterKind::brick;
  if (s == "greedy") return SplitterKind::greedy;
  if (s == "exact") return SplitterKind::exact;
  return std::nullopt;
}

namespace {

SplitCover with_family_count(std::vector<std::vector<PointSet>> families, int at_least,
                             const std::string& space_id) {
  while (static_cast<int>(families.size()) < at_least) families.emplace_back();
  SplitCover out;
  out.space_id = space_id;
  out.families = std::move(families);
  return out;
}

int nonempty_families(const std::vector<std::vector<PointSet>>& families) {
  int c = 0;
  for (const auto& f : families)
    if (!f.empty()) ++c;
  return c;
}

// path: tiles of consecutive indices, two alternating families; tile length
// chosen so same-family tiles sit (L+1)*step > separation apart
SplitCover brick_path(const FiniteMetricSpace& X, Dist separation, int requested_n) {
  const Dist step = X.meta.p2;
  const long long len = std::max<long long>(1, ceil_div(separation + 1, step) - 1);
  std::vector<std::vector<PointSet>> families(2);
  for (long long start = 0; start < X.size(); start += len) {
    long long stop = std::min<long long>(start + len, X.size());
    std::vector<Point> tile;
    for (long long i = start; i < stop; ++i) tile.push_back(static_cast<Point>(i));
    families[(start / len) % 2].push_back(PointSet(std::move(tile)));
  }
  return with_family_count(std::move(families), requested_n + 1, X.meta.id());
}

// grid: masonry bricks 2s wide and s tall, odd bands shifted right by s,
// three colors cycling along each band and rotating by two between bands.
// Same-color bricks end up at distance s+1 or more in both norms.
SplitCover brick_grid(const FiniteMetricSpace& X, Dist separation, int requested_n) {
  const long long w = X.meta.p1;
  const Dist s = separation;
  const Dist bw = 2 * s;
  std::map<std::pair<long long, long long>, std::vector<Point>> bricks;
  for (Point p = 0; p < X.size(); ++p) {
    long long x = p % w;
    long long y = p / w;
    long long band = y / s;
    long long m = floor_div(x - (band % 2) * s, bw);
    bricks[{band, m}].push_back(p);
  }
  std::vector<std::vector<PointSet>> families(3);
  for (auto& [key, pts] : bricks) {
    auto [band, m] = key;
    int color = static_cast<int>(((m % 3) + 3 + 2 * (band & 1)) % 3);
    families[color].push_back(PointSet(std::move(pts)));
  }
  return with_family_count(std::move(families), requested_n + 1, X.meta.id());
}

SplitCover greedy_split(const FiniteMetricSpace& X, Dist separation, int requested_n) {
  const int k = X.size();
  std::vector<Point> seeds{0};
  std::vector<Dist> to_seed(k);
  for (Point p = 0; p < k; ++p) to_seed[p] = X.dist(p, 0);
  for (;;) {
    Point far = 0;
    for (Point p = 1; p < k; ++p)
      if (to_seed[p] > to_seed[far]) far = p;
    if (to_seed[far] <= separation) break;
    seeds.push_back(far);
    for (Point p = 0; p < k; ++p) to_seed[p] = std::min(to_seed[p], X.dist(p, far));
  }
  std::vector<std::vector<Point>> cells(seeds.size());
  for (Point p = 0; p < k; ++p) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < seeds.size(); ++c)
      if (X.dist(p, seeds[c]) < X.dist(p, seeds[best])) best = c;
    cells[best].push_back(p);
  }
  std::vector<PointSet> members;
  members.reserve(cells.size());
  for (auto& c : cells) members.push_back(PointSet(std::move(c)));
  std::vector<std::vector<PointSet>> families;
  for (const auto& m : members) {
    bool placed = false;
    for (auto& fam : families) {
      bool conflict = false;
      for (const auto& other : fam)
        if (set_distance(X, m, other) <= separation) {
          conflict = true;
          break;
        }
      if (!conflict) {
        fam.push_back(m);
        placed = true;
        break;
      }
    }
    if (!placed) families.push_back({m});
  }
  return with_family_count(std::move(families), requested_n + 1, X.meta.id());
}

// components of the same-family proximity graph (edges at distance <= s) must
// each have diameter <= bound; checked on the partial assignment, and adding
// points only grows components, so the pruning is monotone
bool exact_components_ok(const FiniteMetricSpace& X, const std::vector<int>& assign, int upto,
                         Dist separation, Dist bound) {
  const int k = upto + 1;
  std::vector<int> comp(k);
  for (int i = 0; i < k; ++i) comp[i] = i;
  std::function<int(int)> find = [&](int a) {
    while (comp[a] != a) a = comp[a] = comp[comp[a]];
    return a;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (assign[i] == assign[j] && X.dist(i, j) <= separation) comp[find(i)] = find(j);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (assign[i] == assign[j] && find(i) == find(j) && X.dist(i, j) > bound) return false;
  return true;
}

bool exact_assign(const FiniteMetricSpace& X, std::vector<int>& assign, int next, int max_used,
                  int kmax, Dist separation, Dist bound) {
  if (next == X.size()) return true;
  for (int f = 0; f <= std::min(max_used + 1, kmax - 1); ++f) {
    assign[next] = f;
    if (exact_components_ok(X, assign, next, separation, bound) &&
        exact_assign(X, assign, next + 1, std::max(max_used, f), kmax, separation, bound))
      return true;
  }
  assign[next] = -1;
  return false;
}

SplitCover exact_split(const FiniteMetricSpace& X, Dist separation, int requested_n) {
  if (X.size() > 14) throw ParamError("exact splitter handles at most 14 points");
  std::vector<Dist> bounds{0};
  for (Point a = 0; a < X.size(); ++a)
    for (Point b = a + 1; b < X.size(); ++b) bounds.push_back(X.dist(a, b));
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  std::vector<int> assign(X.size(), -1);
  for (Dist bound : bounds) {
    std::fill(assign.begin(), assign.end(), -1);
    if (exact_assign(X, assign, 0, -1, requested_n + 1, separation, bound)) break;
    if (bound == bounds.back()) throw InternalError("exact splitter found no assignment");
  }
  // members are the same-family proximity components of the final assignment
  std::vector<std::vector<PointSet>> families(requested_n + 1);
  std::vector<char> done(X.size(), 0);
  for (Point p = 0; p < X.size(); ++p) {
    if (done[p]) continue;
    std::vector<Point> comp{p};
    done[p] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Point q = 0; q < X.size(); ++q)
        if (!done[q] && assign[q] == assign[p] && X.dist(comp[head], q) <= separation) {
          done[q] = 1;
          comp.push_back(q);
        }
    families[assign[p]].push_back(PointSet(std::move(comp)));
  }
  return with_family_count(std::move(families), requested_n + 1, X.meta.id());
}

}  // namespace

SplitCover run_splitter(SplitterKind kind, const FiniteMetricSpace& X, Dist separation,
                        int requested_n, int* colors_used) {
  if (separation < 1) throw ParamError("separation must be positive");
  if (requested_n < 1) throw ParamError("need at least two families");
  SplitCover sc;
  switch (kind) {
    case SplitterKind::brick:
      if (X.meta.kind == "path")
        sc = brick_path(X, separation, requested_n);
      else if (X.meta.kind == "grid")
        sc = brick_grid(X, separation, requested_n);
      else
        throw ParamError("brick splitter needs a path or grid space");
      break;
    case SplitterKind::greedy: sc = greedy_split(X, separation, requested_n); break;
    case SplitterKind::exact: sc = exact_split(X, separation, requested_n); break;
  }
  if (colors_used) *colors_used = nonempty_families(sc.families);
  return sc;
}

GuidedSequence build_witnessing_sequence(SpaceRef X, const WitnessOptions& opt) {
  if (!X) throw ParamError("no space");
  if (opt.n < 1) throw ParamError("n must be at least 1");
  if (opt.r1 < 1) throw ParamError("r1 must be positive");
  if (opt.max_levels < 1) throw ParamError("max_levels must be positive");

  GuidedSequence seq;
  seq.space = X;
  seq.mode = opt.mode;
  seq.respects_base_point = X->base_point().has_value();

  int n = opt.n;
  const Dist diam = X->diameter();
  for (;;) {  // full restart when a splitter needs more families
    seq.levels.clear();
    Dist r = opt.r1;
    bool restart = false;
    for (int i = 1; i <= opt.max_levels; ++i) {
      if (sat_mul(3, r) > diam) {
        SplitCover sc;
        sc.space_id = X->meta.id();
        sc.families.assign(n + 1, {});
        sc.families[0].push_back(PointSet::full(X->size()));
        seq.levels.push_back({std::move(sc), {std::max(diam, sat_add(r, 1)), r}});
        return seq;
      }
      int used = 0;
      SplitCover sc = run_splitter(opt.splitter, *X, sat_mul(3, r), n, &used);
      if (used > n + 1) {
        n = used - 1;
        seq.n_raised = true;
        restart = true;
        break;
      }
      sc = expand_cover(*X, sc, r);
      if (X->base_point()) sc = respect_basepoint(*X, sc, *X->base_point(), r);
      Dist R = std::max(mesh(*X, sc.all_members()), sat_add(r, 1));
      seq.levels.push_back({std::move(sc), {R, r}});
      r = next_scale(opt.mode, i, R);
    }
    if (!restart) throw ParamError("max_levels reached before the cover went trivial");
  }
}

ValidationReport check_witnessing(const GuidedSequence& seq) {
  ValidationReport rep;
  const FiniteMetricSpace& X = *seq.space;
  rep.add("levels_present", seq.stored_levels() >= 1);
  if (seq.levels.empty()) return rep;

  bool same_n = true;
  for (const auto& lv : seq.levels)
    if (lv.cover.n() != seq.n()) same_n = false;
  rep.add("family_count", same_n);

  for (int i = 1; i <= seq.stored_levels(); ++i) {
    const std::string tag = level_tag(i);
    const SequenceLevel& lv = seq.levels[i - 1];
    const Dist R = lv.guide.R;
    const Dist r = lv.guide.r;
    {
      std::ostringstream w;
      w << "R=" << R << " r=" << r;
      rep.add(tag + "guide_order", R > r && r > 0, R > r && r > 0 ? "" : w.str());
    }
    rep.add(tag + "covers", covers_space(X.size(), lv.cover.all_members()));
    for (int j = 0; j <= lv.cover.n(); ++j) {
      bool ok = false;
      std::string w;
      try {
        ok = is_r_disjoint(X, lv.cover.families[j], r);
        if (!ok) w = "family " + std::to_string(j) + " not strictly r-disjoint";
      } catch (const ContractError&) {
        w = "family " + std::to_string(j) + " has overlapping members";
      }
      rep.add(tag + "family_" + std::to_string(j) + "_disjoint", ok, w);
    }
    {
      Dist m = lv.cover.member_count() ? mesh(X, lv.cover.all_members()) : kInfDist;
      std::ostringstream w;
      w << "mesh=" << m << " R=" << R;
      rep.add(tag + "bounded", m <= R, m <= R ? "" : w.str());
    }
    rep.add(tag + "lebesgue", lebesgue_at_least(X, lv.cover.all_members(), r));
    if (seq.respects_base_point) {
      bool ok = true;
      std::string w;
      if (!seq.trivial_at(i)) {  // trivial tail levels pass by convention
        PointSet core = ball(X, PointSet::single(*X.base_point()), r);
        for (int j = 0; j <= lv.cover.n() && ok; ++j) {
          bool found = false;
          for (const auto& m : lv.cover.families[j])
            if (core.subset_of(m)) {
              found = true;
              break;
            }
          if (!found) {
            ok = false;
            w = "family " + std::to_string(j) + " has no member holding the base ball";
          }
        }
      }
      rep.add(tag + "base_point", ok, w);
    }
    if (i >= 2) {
      const GuidePair prev = seq.levels[i - 2].guide;
      Dist factor = seq.mode == ScheduleMode::strict_100 ? 100LL * (i - 1) + 1 : 2;
      Dist bound = sat_mul(factor, prev.R);
      std::ostringstream w;
      w << "r=" << r << " needs > " << bound;
      rep.add(tag + "schedule", r > bound, r > bound ? "" : w.str());
    }
  }
  rep.add("ends_trivial", seq.trivial_at(seq.stored_levels()));
  return rep;
}

ValidationReport check_defining(int universe, const std::vector<SplitCover>& levels) {
  ValidationReport rep;
  rep.add("levels_present", !levels.empty());
  if (levels.empty()) return rep;

  for (std::size_t li = 0; li < levels.size(); ++li) {
    const std::string tag = level_tag(static_cast<int>(li) + 1);
    rep.add(tag + "covers", covers_space(universe, levels[li].all_members()));
    bool disjoint = true;
    std::string w;
    for (std::size_t j = 0; j < levels[li].families.size() && disjoint; ++j) {
      const auto& fam = levels[li].families[j];
      for (std::size_t a = 0; a < fam.size() && disjoint; ++a)
        for (std::size_t b = a + 1; b < fam.size() && disjoint; ++b)
          if (fam[a].intersects(fam[b])) {
            disjoint = false;
            w = "family " + std::to_string(j) + " members " + std::to_string(a) + "," +
                std::to_string(b) + " overlap";
          }
    }
    rep.add(tag + "family_disjoint", disjoint, w);
  }

  for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
    const std::string tag = level_tag(static_cast<int>(li) + 1);
    const auto cur = levels[li].all_members();
    const auto next = levels[li + 1].all_members();
    bool star_ok = true;
    std::string sw;
    for (Point x = 0; x < universe && star_ok; ++x) {
      PointSet st = star(PointSet::single(x), cur);
      bool inside = false;
      for (const auto& m : next)
        if (st.subset_of(m)) {
          inside = true;
          break;
        }
      if (!inside) {
        star_ok = false;
        sw = "st(" + std::to_string(x) + ") fits no next-level member";
      }
    }
    rep.add(tag + "star_refinement", star_ok, sw);

    bool sep_ok = true;
    std::string pw;
    for (std::size_t j = 0; j < levels[li + 1].families.size() && sep_ok; ++j) {
      const auto& fam = levels[li + 1].families[j];
      for (std::size_t a = 0; a < fam.size() && sep_ok; ++a)
        for (std::size_t b = a + 1; b < fam.size() && sep_ok; ++b)
          if (!separates(cur, fam[a], fam[b])) {
            sep_ok = false;
            pw = "family " + std::to_string(j) + " members " + std::to_string(a) + "," +
                 std::to_string(b) + " not separated";
          }
    }
    rep.add(tag + "separates_next", sep_ok, pw);
  }

  // materialize the member lists once, the pair loop below is quadratic
  std::vector<std::vector<PointSet>> cached;
  cached.reserve(levels.size());
  for (const auto& lv : levels) cached.push_back(lv.all_members());

  bool absorbed = true;
  std::string aw;
  for (Point x = 0; x < universe && absorbed; ++x)
    for (Point y = x + 1; y < universe && absorbed; ++y) {
      bool together = false;
      for (const auto& members : cached) {
        for (const auto& m : members)
          if (m.contains(x) && m.contains(y)) {
            together = true;
            break;
          }
        if (together) break;
      }
      if (!together) {
        absorbed = false;
        aw = "pair (" + std::to_string(x) + "," + std::to_string(y) + ") never absorbed";
      }
    }
  rep.add("absorption", absorbed, aw);
  return rep;
}

ValidationReport check_defining(const GuidedSequence& seq) {
  std::vector<SplitCover> covers;
  covers.reserve(seq.stored_levels());
  for (const auto& lv : seq.levels) covers.push_back(lv.cover);
  return check_defining(seq.space->size(), covers);
}

}  // namespace asdim
