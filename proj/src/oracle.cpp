#include "asdim/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace asdim::oracle {

namespace {

bool member_holds_both(const SplitCover& sc, Point x, Point y) {
  for (const auto& fam : sc.families)
    for (const auto& m : fam)
      if (m.contains(x) && m.contains(y)) return true;
  return false;
}

}  // namespace

Dist oracle_dF(int, const std::vector<SplitCover>& levels, Point x, Point y) {
  if (x == y) return 0;
  Dist best = 0;
  for (std::size_t li = 0; li < levels.size(); ++li)
    if (!member_holds_both(levels[li], x, y)) best = static_cast<Dist>(li) + 1;
  return best;
}

std::vector<std::vector<int>> oracle_group_by_target(const CoarseMap& f,
                                                     const std::vector<PointSet>& members,
                                                     const std::vector<PointSet>& targets) {
  std::vector<int> assigned(members.size(), -1);
  for (std::size_t mi = 0; mi < members.size(); ++mi) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      bool inside = true;
      for (Point x : members[mi].items())
        if (!targets[t].contains(f(x))) {
          inside = false;
          break;
        }
      if (inside) {
        assigned[mi] = static_cast<int>(t);
        break;
      }
    }
    if (assigned[mi] < 0) throw ContractError("member image fits no target member");
  }
  std::vector<int> used = assigned;
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<std::vector<int>> groups;
  for (int t : used) {
    std::vector<int> g;
    for (std::size_t mi = 0; mi < members.size(); ++mi)
      if (assigned[mi] == t) g.push_back(static_cast<int>(mi));
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<std::vector<int>> oracle_split_by(const FiniteMetricSpace& X,
                                              const std::vector<int>& constituents,
                                              const std::vector<PointSet>& source_members,
                                              const std::vector<PointSet>& basis_members,
                                              Point b, Dist c1_radius, Dist r_next) {
  std::vector<int> shell;
  std::vector<int> rest;
  for (int c : constituents) {
    Dist to_base = kInfDist;
    for (Point q : source_members[c].items()) to_base = std::min(to_base, X.dist(q, b));
    if (to_base <= c1_radius)
      shell.push_back(c);
    else
      rest.push_back(c);
  }

  std::vector<std::vector<int>> contained(basis_members.size());
  std::vector<std::vector<int>> nearby(basis_members.size());
  std::vector<int> leftover;
  for (int c : rest) {
    int in_at = -1;
    for (std::size_t bi = 0; bi < basis_members.size(); ++bi) {
      bool inside = true;
      for (Point q : source_members[c].items())
        if (!basis_members[bi].contains(q)) {
          inside = false;
          break;
        }
      if (inside) {
        in_at = static_cast<int>(bi);
        break;
      }
    }
    if (in_at >= 0) {
      contained[in_at].push_back(c);
      continue;
    }
    int near_at = -1;
    for (std::size_t bi = 0; bi < basis_members.size(); ++bi) {
      bool close = true;
      for (Point q : source_members[c].items()) {
        Dist d = kInfDist;
        for (Point t : basis_members[bi].items()) d = std::min(d, X.dist(q, t));
        if (d == kInfDist || 10 * d > r_next) {
          close = false;
          break;
        }
      }
      if (close) {
        if (near_at >= 0) throw InternalError("constituent close to two basis members");
        near_at = static_cast<int>(bi);
      }
    }
    if (near_at >= 0)
      nearby[near_at].push_back(c);
    else
      leftover.push_back(c);
  }

  std::vector<std::vector<int>> out;
  if (!shell.empty()) out.push_back(std::move(shell));
  for (auto& g : contained)
    if (!g.empty()) out.push_back(std::move(g));
  for (auto& g : nearby)
    if (!g.empty()) out.push_back(std::move(g));
  if (!leftover.empty()) out.push_back(std::move(leftover));
  return out;
}

ValidationReport check_daggers(const FactorizationState& st, int p, int i) {
  ValidationReport rep;
  const std::string tag = "p" + std::to_string(p) + "_i" + std::to_string(i) + "_";
  const TaggedCover& cell = st.cell(p, i);
  const FiniteMetricSpace& X = *st.seqX.space;
  const SplitCover level = st.seqX.cover_at(i);

  {
    bool ok = true;
    std::string w;
    const int cap = st.f.target->size();
    for (std::size_t j = 0; j < cell.families.size(); ++j)
      if (static_cast<int>(cell.families[j].members.size()) > cap) {
        ok = false;
        w = "family " + std::to_string(j) + " has " +
            std::to_string(cell.families[j].members.size()) + " members, cap " +
            std::to_string(cap);
        break;
      }
    rep.add(tag + "cardinality_cap", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t j = 0; j < cell.families.size() && ok; ++j) {
      std::vector<int> seen(level.families[j].size(), 0);
      for (const auto& m : cell.families[j].members) {
        PointSet expect;
        for (int c : m.constituents) {
          if (c < 0 || c >= static_cast<int>(seen.size())) {
            ok = false;
            w = "family " + std::to_string(j) + " has a stray constituent";
            break;
          }
          ++seen[c];
          expect = expect.unite(level.families[j][c]);
        }
        if (ok && !(expect == m.points)) {
          ok = false;
          w = "family " + std::to_string(j) + " member points drift from constituents";
        }
        if (!ok) break;
      }
      if (ok)
        for (std::size_t c = 0; c < seen.size(); ++c)
          if (seen[c] != 1) {
            ok = false;
            w = "family " + std::to_string(j) + " constituent " + std::to_string(c) +
                " appears " + std::to_string(seen[c]) + " times";
            break;
          }
    }
    rep.add(tag + "constituent_partition", ok, w);
  }

  if (p >= 1) {
    const TaggedCover& prev = st.cell(p - 1, i);
    const PointSet shell =
        ball(X, PointSet::single(st.b), sat_mul(i, st.seqX.guide_at(i + p - 1).r));
    bool ok = true;
    std::string w;
    for (std::size_t j = 0; j < cell.families.size() && ok; ++j) {
      std::vector<PointSet> now;
      for (const auto& m : cell.families[j].members) {
        PointSet t = m.points.intersect(shell);
        if (!t.empty()) now.push_back(std::move(t));
      }
      std::vector<PointSet> before;
      for (const auto& m : prev.families[j].members) {
        PointSet t = m.points.intersect(shell);
        if (!t.empty()) before.push_back(std::move(t));
      }
      std::sort(now.begin(), now.end());
      std::sort(before.begin(), before.end());
      if (now != before) {
        ok = false;
        w = "family " + std::to_string(j) + " changes on the stabilization ball";
      }
      for (const auto& m : cell.families[j].members) {
        bool inside = false;
        for (const auto& o : prev.families[j].members)
          if (m.points.subset_of(o.points)) {
            inside = true;
            break;
          }
        if (!inside) {
          ok = false;
          w = "family " + std::to_string(j) + " member escapes the previous stage";
          break;
        }
      }
    }
    rep.add(tag + "ball_agreement", ok, w);
  }

  if (p >= 1) {
    const TaggedCover& above = st.cell(p - 1, i + 1);
    const SplitCover cov = cell.untag("");
    const auto all = cov.all_members();
    std::vector<PointSet> above_members;
    for (const auto& fam : above.families)
      for (const auto& m : fam.members) above_members.push_back(m.points);
    bool ok = true;
    std::string w;
    for (Point x = 0; x < X.size() && ok; ++x) {
      PointSet st_x = star(PointSet::single(x), all);
      bool inside = false;
      for (const auto& m : above_members)
        if (st_x.subset_of(m)) {
          inside = true;
          break;
        }
      if (!inside) {
        ok = false;
        w = "star of " + std::to_string(x) + " fits no member above";
      }
    }
    rep.add(tag + "star_refinement", ok, w);

    bool sep = true;
    std::string sw;
    for (std::size_t j = 0; j < above.families.size() && sep; ++j) {
      const auto& fam = above.families[j].members;
      for (std::size_t a = 0; a < fam.size() && sep; ++a)
        for (std::size_t b2 = a + 1; b2 < fam.size() && sep; ++b2)
          if (!separates(all, fam[a].points, fam[b2].points)) {
            sep = false;
            sw = "family " + std::to_string(j) + " members " + std::to_string(a) + "," +
                 std::to_string(b2);
          }
    }
    rep.add(tag + "family_separation", sep, sw);
  }
  return rep;
}

ValidationReport check_all_daggers(const FactorizationState& st) {
  ValidationReport rep;
  for (int p = 0; p < static_cast<int>(st.rows.size()); ++p)
    for (int i = 1; st.has_cell(p, i); ++i) {
      if (p >= 1 && !st.has_cell(p - 1, i + 1)) continue;  // needs the cell above
      rep.merge(check_daggers(st, p, i));
    }
  return rep;
}

ValidationReport check_claim_family(const FactorizationState& st,
                                    const std::vector<SplitCover>& limit) {
  ValidationReport rep;
  for (int i = 1; i <= static_cast<int>(limit.size()); ++i) {
    const SplitCover level = st.seqX.cover_at(i);
    const SplitCover& lim = limit[i - 1];
    bool ok = true;
    std::string w;
    for (std::size_t j = 0; j < level.families.size() && ok; ++j)
      for (const auto& m : level.families[j]) {
        bool inside = false;
        for (const auto& o : lim.families[j])
          if (m.subset_of(o)) {
            inside = true;
            break;
          }
        if (!inside) {
          ok = false;
          w = "family " + std::to_string(j) + " member " + format_points(m);
          break;
        }
      }
    rep.add("L" + std::to_string(i) + "_level_in_limit", ok, w);

    bool stage_ok = true;
    std::string sw;
    for (int p = 0; st.has_cell(p, i) && stage_ok; ++p) {
      const TaggedCover& cell = st.cell(p, i);
      for (std::size_t j = 0; j < lim.families.size() && stage_ok; ++j)
        for (const auto& m : lim.families[j]) {
          bool inside = false;
          for (const auto& o : cell.families[j].members)
            if (m.subset_of(o.points)) {
              inside = true;
              break;
            }
          if (!inside) {
            stage_ok = false;
            sw = "stage " + std::to_string(p) + " family " + std::to_string(j);
            break;
          }
        }
    }
    rep.add("L" + std::to_string(i) + "_limit_in_stages", stage_ok, sw);
  }
  return rep;
}

namespace {

// same-family proximity components must keep diameter <= B
bool assignment_ok(const FiniteMetricSpace& X, const std::vector<int>& assign, int upto, Dist r,
                   Dist B) {
  const int k = upto + 1;
  std::vector<int> comp(k);
  for (int i = 0; i < k; ++i) comp[i] = i;
  std::function<int(int)> find = [&](int a) {
    while (comp[a] != a) a = comp[a] = comp[comp[a]];
    return a;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (assign[i] == assign[j] && X.dist(i, j) <= r) comp[find(i)] = find(j);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (assign[i] == assign[j] && find(i) == find(j) && X.dist(i, j) > B) return false;
  return true;
}

bool feasible(const FiniteMetricSpace& X, std::vector<int>& assign, int next, int max_used,
              int k, Dist r, Dist B) {
  if (next == X.size()) return true;
  for (int f = 0; f <= std::min(max_used + 1, k - 1); ++f) {
    assign[next] = f;
    if (assignment_ok(X, assign, next, r, B) &&
        feasible(X, assign, next + 1, std::max(max_used, f), k, r, B))
      return true;
  }
  assign[next] = -1;
  return false;
}

int greedy_family_count(const FiniteMetricSpace& X, Dist r, Dist B) {
  const int k = X.size();
  const Dist radius = B / 2;
  std::vector<Point> seeds{0};
  std::vector<Dist> to_seed(k);
  for (Point p = 0; p < k; ++p) to_seed[p] = X.dist(p, 0);
  for (;;) {
    Point far = 0;
    for (Point p = 1; p < k; ++p)
      if (to_seed[p] > to_seed[far]) far = p;
    if (to_seed[far] <= radius) break;
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
  for (auto& c : cells)
    if (!c.empty()) members.push_back(PointSet(std::move(c)));
  std::vector<std::vector<PointSet>> families;
  for (const auto& m : members) {
    bool placed = false;
    for (auto& fam : families) {
      bool conflict = false;
      for (const auto& other : fam)
        if (set_distance(X, m, other) <= r) {
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
  return static_cast<int>(families.size());
}

}  // namespace

int exhaustive_asdim_upper(const FiniteMetricSpace& X, Dist r, Dist B, AsdimMode mode) {
  if (mode == AsdimMode::greedy) return greedy_family_count(X, r, B);
  if (X.size() > 14) throw ParamError("exact search handles at most 14 points");
  for (int k = 1; k <= X.size(); ++k) {
    std::vector<int> assign(X.size(), -1);
    if (feasible(X, assign, 0, -1, k, r, B)) return k;
  }
  throw InternalError("no family count worked");
}

ValidationReport triple_scan_triangle(const FiniteMetricSpace& X) {
  ValidationReport rep;
  for (Point a = 0; a < X.size(); ++a)
    for (Point b = 0; b < X.size(); ++b)
      for (Point c = 0; c < X.size(); ++c)
        if (X.dist(a, c) > X.dist(a, b) + X.dist(b, c)) {
          std::ostringstream w;
          w << "d(" << a << ',' << c << ") > d(" << a << ',' << b << ")+d(" << b << ',' << c
            << ')';
          rep.add_failure("triangle", w.str());
          return rep;
        }
  rep.add("triangle", true);
  return rep;
}

}  // namespace asdim::oracle
