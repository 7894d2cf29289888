#include "asdim/space.hpp"

#include <queue>
#include <random>
#include <sstream>

namespace asdim {

std::string SpaceMeta::id() const {
  if (kind.empty()) return "";
  std::ostringstream out;
  if (kind == "derived") {
    out << "derived(" << variant << ')';
    return out.str();
  }
  out << kind << '(' << p1 << ',' << p2;
  if (!variant.empty()) out << ',' << variant;
  if (seed) out << ",seed=" << *seed;
  out << ')';
  return out.str();
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> names, std::vector<Dist> full,
                                     std::optional<Point> base)
    : k_(static_cast<int>(names.size())), names_(std::move(names)), full_(std::move(full)) {
  if (full_.size() != static_cast<std::size_t>(k_) * k_)
    throw DataError("distance matrix size does not match point count");
  set_base_point(base);
}

FiniteMetricSpace FiniteMetricSpace::from_lower_triangular(std::vector<std::string> names,
                                                           const std::vector<Dist>& tri,
                                                           std::optional<Point> base) {
  const int k = static_cast<int>(names.size());
  if (tri.size() != static_cast<std::size_t>(k) * (k - 1) / 2)
    throw DataError("lower-triangular array has wrong length");
  std::vector<Dist> full(static_cast<std::size_t>(k) * k, 0);
  std::size_t t = 0;
  for (int i = 1; i < k; ++i)
    for (int j = 0; j < i; ++j) {
      full[static_cast<std::size_t>(i) * k + j] = tri[t];
      full[static_cast<std::size_t>(j) * k + i] = tri[t];
      ++t;
    }
  return FiniteMetricSpace(std::move(names), std::move(full), base);
}

void FiniteMetricSpace::set_base_point(std::optional<Point> b) {
  if (b && (*b < 0 || *b >= k_)) throw ParamError("base point out of range");
  base_ = b;
}

std::vector<Dist> FiniteMetricSpace::lower_triangular() const {
  std::vector<Dist> tri;
  tri.reserve(static_cast<std::size_t>(k_) * (k_ - 1) / 2);
  for (int i = 1; i < k_; ++i)
    for (int j = 0; j < i; ++j) tri.push_back(dist(i, j));
  return tri;
}

Dist FiniteMetricSpace::diameter() const {
  Dist best = 0;
  for (int a = 0; a < k_; ++a)
    for (int b = a + 1; b < k_; ++b) best = std::max(best, dist(a, b));
  return best;
}

Dist FiniteMetricSpace::eccentricity(Point p) const {
  Dist best = 0;
  for (int q = 0; q < k_; ++q) best = std::max(best, dist(p, q));
  return best;
}

ValidationReport validate_metric(const FiniteMetricSpace& X) {
  ValidationReport rep;
  const int k = X.size();

  bool ok = true;
  std::ostringstream w;
  for (int a = 0; a < k && ok; ++a)
    if (X.dist(a, a) != 0) {
      ok = false;
      w << "d(" << a << ',' << a << ")=" << X.dist(a, a);
    }
  rep.add("zero_diagonal", ok, w.str());

  ok = true;
  w.str("");
  for (int a = 0; a < k && ok; ++a)
    for (int b = a + 1; b < k && ok; ++b)
      if (X.dist(a, b) <= 0) {
        ok = false;
        w << "d(" << a << ',' << b << ")=" << X.dist(a, b);
      }
  rep.add("positive_off_diagonal", ok, w.str());

  ok = true;
  w.str("");
  for (int a = 0; a < k && ok; ++a)
    for (int b = a + 1; b < k && ok; ++b)
      if (X.dist(a, b) != X.dist(b, a)) {
        ok = false;
        w << "d(" << a << ',' << b << ")=" << X.dist(a, b) << " vs d(" << b << ',' << a
          << ")=" << X.dist(b, a);
      }
  rep.add("symmetry", ok, w.str());

  // triangle over all ordered triples; keep the lexicographically first
  // violation so reruns agree regardless of thread count
  long long bad = -1;
#pragma omp parallel
  {
    long long local = -1;
#pragma omp for schedule(static)
    for (int a = 0; a < k; ++a) {
      if (local != -1) continue;
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c)
          if (X.dist(a, c) > sat_add(X.dist(a, b), X.dist(b, c))) {
            long long code = (static_cast<long long>(a) * k + b) * k + c;
            if (local == -1 || code < local) local = code;
            break;
          }
    }
#pragma omp critical
    if (local != -1 && (bad == -1 || local < bad)) bad = local;
  }
  if (bad == -1) {
    rep.add("triangle", true);
  } else {
    int c = static_cast<int>(bad % k);
    int b = static_cast<int>(bad / k % k);
    int a = static_cast<int>(bad / k / k);
    std::ostringstream tw;
    tw << "d(" << a << ',' << c << ")=" << X.dist(a, c) << " > " << X.dist(a, b) << '+'
       << X.dist(b, c) << " via " << b;
    rep.add_failure("triangle", tw.str());
  }
  return rep;
}

PointSet ball(const FiniteMetricSpace& X, const PointSet& a, Dist r) {
  std::vector<Point> pts;
  if (a.empty() || r < 0) return PointSet{};
  for (Point x = 0; x < X.size(); ++x)
    if (point_to_set(X, x, a) <= r) pts.push_back(x);
  return PointSet(std::move(pts));
}

Dist point_to_set(const FiniteMetricSpace& X, Point p, const PointSet& a) {
  Dist best = kInfDist;
  for (Point q : a.items()) best = std::min(best, X.dist(p, q));
  return best;
}

Dist set_distance(const FiniteMetricSpace& X, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) return kInfDist;
  Dist best = kInfDist;
  for (Point p : a.items()) best = std::min(best, point_to_set(X, p, b));
  return best;
}

Dist set_diameter(const FiniteMetricSpace& X, const PointSet& a) {
  Dist best = 0;
  const auto& v = a.items();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, X.dist(v[i], v[j]));
  return best;
}

bool is_r_close(const FiniteMetricSpace& X, const PointSet& b, const PointSet& a, Dist r) {
  for (Point p : b.items())
    if (point_to_set(X, p, a) > r) return false;
  return true;
}

bool is_r_close(const FiniteMetricSpace& X, const PointSet& b, const PointSet& a, Ratio r) {
  for (Point p : b.items())
    if (!dist_le(point_to_set(X, p, a), r)) return false;
  return true;
}

namespace {

std::vector<std::string> index_names(long long k) {
  std::vector<std::string> names(k);
  for (long long i = 0; i < k; ++i) names[i] = std::to_string(i);
  return names;
}

}  // namespace

FiniteMetricSpace make_path(long long k, Dist step) {
  if (k < 1) throw ParamError("path needs at least one point");
  if (step < 1) throw ParamError("path step must be positive");
  std::vector<Dist> full(static_cast<std::size_t>(k) * k);
  for (long long i = 0; i < k; ++i)
    for (long long j = 0; j < k; ++j)
      full[static_cast<std::size_t>(i) * k + j] = (i > j ? i - j : j - i) * step;
  FiniteMetricSpace X(index_names(k), std::move(full), 0);
  X.meta = SpaceMeta{"path", k, step, "", {}};
  return X;
}

FiniteMetricSpace make_grid(long long w, long long h, GridNorm norm) {
  if (w < 1 || h < 1) throw ParamError("grid needs positive width and height");
  const long long k = w * h;
  std::vector<Dist> full(static_cast<std::size_t>(k) * k);
  for (long long p = 0; p < k; ++p)
    for (long long q = 0; q < k; ++q) {
      long long dx = std::abs(p % w - q % w);
      long long dy = std::abs(p / w - q / w);
      full[static_cast<std::size_t>(p) * k + q] =
          norm == GridNorm::l1 ? dx + dy : std::max(dx, dy);
    }
  FiniteMetricSpace X(index_names(k), std::move(full), 0);
  X.meta = SpaceMeta{"grid", w, h, norm == GridNorm::l1 ? "l1" : "linf", {}};
  return X;
}

FiniteMetricSpace make_tree(long long branching, long long depth) {
  if (branching < 1 || depth < 0) throw ParamError("tree needs branching >= 1 and depth >= 0");
  // nodes numbered breadth-first, children of v are b*v+1 .. b*v+b
  long long k = 1;
  long long layer = 1;
  for (long long d = 0; d < depth; ++d) {
    layer *= branching;
    k += layer;
    if (k > 4096) throw ParamError("tree too large");
  }
  std::vector<int> node_depth(k);
  for (long long v = 1; v < k; ++v) node_depth[v] = node_depth[(v - 1) / branching] + 1;
  std::vector<Dist> full(static_cast<std::size_t>(k) * k, 0);
  for (long long u = 0; u < k; ++u)
    for (long long v = u + 1; v < k; ++v) {
      long long a = u;
      long long b = v;
      Dist d = 0;
      while (node_depth[a] > node_depth[b]) {
        a = (a - 1) / branching;
        ++d;
      }
      while (node_depth[b] > node_depth[a]) {
        b = (b - 1) / branching;
        ++d;
      }
      while (a != b) {
        a = (a - 1) / branching;
        b = (b - 1) / branching;
        d += 2;
      }
      full[static_cast<std::size_t>(u) * k + v] = d;
      full[static_cast<std::size_t>(v) * k + u] = d;
    }
  FiniteMetricSpace X(index_names(k), std::move(full), 0);
  X.meta = SpaceMeta{"tree", branching, depth, "", {}};
  return X;
}

FiniteMetricSpace make_random(long long k, Dist diameter, unsigned long long seed) {
  if (k < 1) throw ParamError("random space needs at least one point");
  if (diameter < 1) throw ParamError("random space needs a positive diameter");
  std::mt19937_64 engine(seed);
  std::vector<Dist> full(static_cast<std::size_t>(k) * k, 0);
  for (long long i = 1; i < k; ++i)
    for (long long j = 0; j < i; ++j) {
      Dist d = 1 + static_cast<Dist>(engine() % static_cast<unsigned long long>(diameter));
      full[static_cast<std::size_t>(i) * k + j] = d;
      full[static_cast<std::size_t>(j) * k + i] = d;
    }
  // shortest-path closure turns the draws into an honest metric
  for (long long m = 0; m < k; ++m)
    for (long long i = 0; i < k; ++i)
      for (long long j = 0; j < k; ++j) {
        Dist via = full[static_cast<std::size_t>(i) * k + m] +
                   full[static_cast<std::size_t>(m) * k + j];
        if (via < full[static_cast<std::size_t>(i) * k + j])
          full[static_cast<std::size_t>(i) * k + j] = via;
      }
  FiniteMetricSpace X(index_names(k), std::move(full), 0);
  X.meta = SpaceMeta{"random", k, diameter, "", seed};
  return X;
}

}  // namespace asdim
