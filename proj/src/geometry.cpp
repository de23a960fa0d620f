#include "vorcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vorcov/rng.hpp"

namespace vorcov {

double Window::guard_area() const {
  const double g = guard_radius();
  return M_PI * g * g;
}

void Window::validate() const {
  if (!(radius > guard && guard > 0.0)) {
    throw std::invalid_argument("window requires radius > guard > 0");
  }
}

double default_guard(double lambda) { return 4.0 / std::sqrt(lambda * M_PI); }

double default_window_radius(double lambda) {
  return default_guard(lambda) / (1.0 - std::sqrt(0.8));
}

PointPattern sample_ppp(double lambda, const Window& window, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  window.validate();
  Rng rng(seed);
  const std::uint64_t count = rng.poisson(lambda * M_PI * window.radius * window.radius);
  if (count < 3) {
    throw DegeneratePatternError("degenerate pattern: fewer than 3 points sampled");
  }
  PointPattern pattern;
  pattern.window = window;
  pattern.seed = seed;
  pattern.points.resize(count);
  for (auto& p : pattern.points) {
    const double r = window.radius * std::sqrt(rng.uniform01());
    const double theta = 2.0 * M_PI * rng.uniform01();
    p = {r * std::cos(theta), r * std::sin(theta)};
  }
  return pattern;
}

namespace {

// ---- filtered predicates (Shewchuk-style static filters, long double
// fallback; values below the long double bound are treated as exact zero) ----

constexpr double kCcwErrA = 3.3306690738754716e-16;       // (3 + 16e)e, e = 2^-53
constexpr long double kCcwErrLd = 1.626304e-19L;          // same with e = 2^-64
constexpr double kIccErrA = 1.1102230246251577e-15;       // (10 + 96e)e
constexpr long double kIccErrLd = 5.421011e-19L;

long double orient2d_ld(const Vec2& a, const Vec2& b, const Vec2& c) {
  const long double detleft = (static_cast<long double>(a.x) - c.x) *
                              (static_cast<long double>(b.y) - c.y);
  const long double detright = (static_cast<long double>(a.y) - c.y) *
                               (static_cast<long double>(b.x) - c.x);
  const long double det = detleft - detright;
  const long double detsum = std::abs(detleft) + std::abs(detright);
  if (std::abs(det) >= kCcwErrLd * detsum) return det;
  return 0.0L;
}

// > 0: c strictly left of a->b.
double orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det;
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det;
    detsum = -detleft - detright;
  } else {
    return det;
  }
  if (std::abs(det) >= kCcwErrA * detsum) return det;
  return static_cast<double>(orient2d_ld(a, b, c));
}

long double incircle_ld(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const long double adx = static_cast<long double>(a.x) - d.x;
  const long double ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x;
  const long double bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x;
  const long double cdy = static_cast<long double>(c.y) - d.y;
  const long double alift = adx * adx + ady * ady;
  const long double blift = bdx * bdx + bdy * bdy;
  const long double clift = cdx * cdx + cdy * cdy;
  const long double bxcy = bdx * cdy, cxby = cdx * bdy;
  const long double cxay = cdx * ady, axcy = adx * cdy;
  const long double axby = adx * bdy, bxay = bdx * ady;
  const long double det = alift * (bxcy - cxby) + blift * (cxay - axcy) +
                          clift * (axby - bxay);
  const long double permanent = (std::abs(bxcy) + std::abs(cxby)) * alift +
                                (std::abs(cxay) + std::abs(axcy)) * blift +
                                (std::abs(axby) + std::abs(bxay)) * clift;
  if (std::abs(det) >= kIccErrLd * permanent) return det;
  return 0.0L;
}

// > 0: d strictly inside the circumcircle of CCW triangle (a, b, c).
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double bxcy = bdx * cdy, cxby = cdx * bdy;
  const double cxay = cdx * ady, axcy = adx * cdy;
  const double axby = adx * bdy, bxay = bdx * ady;
  const double det = alift * (bxcy - cxby) + blift * (cxay - axcy) +
                     clift * (axby - bxay);
  const double permanent = (std::abs(bxcy) + std::abs(cxby)) * alift +
                           (std::abs(cxay) + std::abs(axcy)) * blift +
                           (std::abs(axby) + std::abs(bxay)) * clift;
  if (std::abs(det) >= kIccErrA * permanent) return det;
  return static_cast<double>(incircle_ld(a, b, c, d));
}

// ---- Bowyer-Watson ----

struct BwTriangle {
  std::array<std::int32_t, 3> v;  // CCW
  std::array<std::int32_t, 3> nbr;  // nbr[i] across the edge opposite v[i]
};

class Triangulator {
 public:
  explicit Triangulator(const std::vector<Vec2>& input, double extent)
      : n_(static_cast<std::int32_t>(input.size())) {
    pts_ = input;
    const double d = 1024.0 * std::max(extent, 1.0);
    pts_.push_back({0.0, 2.0 * d});
    pts_.push_back({-std::sqrt(3.0) * d, -d});
    pts_.push_back({std::sqrt(3.0) * d, -d});
    tris_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}});
    alive_.push_back(1);
    stamp_.push_back(0);
    last_ = 0;
  }

  void insert(std::int32_t p);
  std::vector<Triangle> finite_triangles() const;

 private:
  std::int32_t locate(const Vec2& p) const;
  bool in_conflict(std::int32_t t, const Vec2& p) const {
    const auto& tv = tris_[t].v;
    return incircle(pts_[tv[0]], pts_[tv[1]], pts_[tv[2]], p) > 0.0;
  }
  std::int32_t alloc() {
    if (!free_.empty()) {
      const std::int32_t t = free_.back();
      free_.pop_back();
      alive_[t] = 1;
      return t;
    }
    tris_.push_back({});
    alive_.push_back(1);
    stamp_.push_back(0);
    return static_cast<std::int32_t>(tris_.size()) - 1;
  }

  std::int32_t n_;
  std::vector<Vec2> pts_;
  std::vector<BwTriangle> tris_;
  std::vector<char> alive_;
  std::vector<int> stamp_;
  std::vector<std::int32_t> free_;
  std::int32_t last_ = 0;
  int epoch_ = 0;
};

std::int32_t Triangulator::locate(const Vec2& p) const {
  std::int32_t cur = last_;
  const std::size_t max_steps = 4 * tris_.size() + 64;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const BwTriangle& t = tris_[cur];
    std::int32_t move = -1;
    for (int e = 0; e < 3; ++e) {
      const Vec2& ea = pts_[t.v[(e + 1) % 3]];
      const Vec2& eb = pts_[t.v[(e + 2) % 3]];
      if (orient2d(ea, eb, p) < 0.0) {
        move = t.nbr[e];
        break;
      }
    }
    if (move < 0) return cur;
    cur = move;
  }
  // Walk failed to settle (should not happen on a Delaunay mesh); scan.
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(tris_.size()); ++t) {
    if (!alive_[t]) continue;
    const BwTriangle& tr = tris_[t];
    bool inside = true;
    for (int e = 0; e < 3 && inside; ++e) {
      inside = orient2d(pts_[tr.v[(e + 1) % 3]], pts_[tr.v[(e + 2) % 3]], p) >= 0.0;
    }
    if (inside) return t;
  }
  throw DegenerateConfigurationError("point location failed");
}

void Triangulator::insert(std::int32_t p) {
  const Vec2& q = pts_[p];
  const std::int32_t seed_tri = locate(q);

  // Conflict region: connected set of triangles whose circumcircle holds q.
  ++epoch_;
  std::vector<std::int32_t> conflict;
  std::vector<std::int32_t> work{seed_tri};
  stamp_[seed_tri] = epoch_;
  while (!work.empty()) {
    const std::int32_t t = work.back();
    work.pop_back();
    conflict.push_back(t);
    for (int e = 0; e < 3; ++e) {
      const std::int32_t nb = tris_[t].nbr[e];
      if (nb < 0 || stamp_[nb] == epoch_) continue;
      if (in_conflict(nb, q)) {
        stamp_[nb] = epoch_;
        work.push_back(nb);
      }
    }
  }

  struct BoundaryEdge {
    std::int32_t a, b, outside;
  };
  std::vector<BoundaryEdge> boundary;
  boundary.reserve(conflict.size() + 2);
  for (const std::int32_t t : conflict) {
    for (int e = 0; e < 3; ++e) {
      const std::int32_t nb = tris_[t].nbr[e];
      if (nb >= 0 && stamp_[nb] == epoch_) continue;
      boundary.push_back({tris_[t].v[(e + 1) % 3], tris_[t].v[(e + 2) % 3], nb});
    }
  }
  for (const std::int32_t t : conflict) {
    alive_[t] = 0;
    free_.push_back(t);
  }

  // Star the cavity: one new triangle (p, a, b) per boundary edge.
  std::vector<std::int32_t> fresh(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) fresh[i] = alloc();
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const BoundaryEdge& e = boundary[i];
    BwTriangle& t = tris_[fresh[i]];
    t.v = {p, e.a, e.b};
    t.nbr = {e.outside, -1, -1};
    if (e.outside >= 0) {
      // The outside triangle sees this edge as (b, a); rewire that edge only,
      // since it may border the cavity on more than one side.
      BwTriangle& out = tris_[e.outside];
      for (int k = 0; k < 3; ++k) {
        const std::int32_t ea = out.v[(k + 1) % 3];
        const std::int32_t eb = out.v[(k + 2) % 3];
        if ((ea == e.b && eb == e.a) || (ea == e.a && eb == e.b)) {
          out.nbr[k] = fresh[i];
          break;
        }
      }
    }
  }
  // Link new triangles around p: across edge (b, p) sits the triangle whose
  // boundary edge starts at b; across (p, a) the one that ends at a.
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    for (std::size_t j = 0; j < boundary.size(); ++j) {
      if (boundary[j].a == boundary[i].b) tris_[fresh[i]].nbr[1] = fresh[j];
      if (boundary[j].b == boundary[i].a) tris_[fresh[i]].nbr[2] = fresh[j];
    }
  }
  last_ = fresh.empty() ? last_ : fresh[0];
}

std::vector<Triangle> Triangulator::finite_triangles() const {
  std::vector<Triangle> out;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (!alive_[t]) continue;
    auto v = tris_[t].v;
    if (v[0] >= n_ || v[1] >= n_ || v[2] >= n_) continue;
    std::sort(v.begin(), v.end());
    out.push_back({v});
  }
  std::sort(out.begin(), out.end(),
            [](const Triangle& a, const Triangle& b) { return a.v < b.v; });
  return out;
}

std::uint64_t morton_key(double x, double y, double inv_extent) {
  const auto expand = [](std::uint64_t w) {
    w &= (1ULL << 21) - 1;
    w = (w | (w << 32)) & 0x1f00000000ffffULL;
    w = (w | (w << 16)) & 0x1f0000ff0000ffULL;
    w = (w | (w << 8)) & 0x100f00f00f00f00fULL;
    w = (w | (w << 4)) & 0x10c30c30c30c30c3ULL;
    w = (w | (w << 2)) & 0x1249249249249249ULL;
    return w;
  };
  const double sx = std::clamp(0.5 * (x * inv_extent + 1.0), 0.0, 1.0);
  const double sy = std::clamp(0.5 * (y * inv_extent + 1.0), 0.0, 1.0);
  const auto qx = static_cast<std::uint64_t>(sx * 2097151.0);
  const auto qy = static_cast<std::uint64_t>(sy * 2097151.0);
  return (expand(qx) << 1) | expand(qy);
}

}  // namespace

std::vector<Triangle> delaunay(const PointPattern& pattern) {
  const auto& pts = pattern.points;
  if (pts.size() < 3) {
    throw DegenerateConfigurationError("degenerate configuration: need at least 3 points");
  }
  double extent = 1e-9;
  for (const auto& p : pts) {
    extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  }

  // Spatially sorted insertion keeps the located triangle next to the last
  // insertion, so the walk is short.
  std::vector<std::int32_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int32_t>(i);
  std::vector<std::uint64_t> keys(pts.size());
  const double inv_extent = 1.0 / extent;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    keys[i] = morton_key(pts[i].x, pts[i].y, inv_extent);
  }
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });

  Triangulator tri(pts, extent);
  for (const std::int32_t idx : order) tri.insert(idx);
  auto out = tri.finite_triangles();
  if (out.empty()) {
    throw DegenerateConfigurationError("degenerate configuration: all points collinear");
  }
  return out;
}

Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
  const long double d0x = static_cast<long double>(b.x) - a.x;
  const long double d0y = static_cast<long double>(b.y) - a.y;
  const long double d1x = static_cast<long double>(c.x) - a.x;
  const long double d1y = static_cast<long double>(c.y) - a.y;
  const long double cross = d0x * d1y - d0y * d1x;
  const long double d00 = d0x * d0x + d0y * d0y;
  const long double d11 = d1x * d1x + d1y * d1y;
  const long double ux = (d1y * d00 - d0y * d11) / (2.0L * cross);
  const long double uy = (d0x * d11 - d1x * d00) / (2.0L * cross);
  return {static_cast<double>(ux + a.x), static_cast<double>(uy + a.y)};
}

std::vector<VertexRecord> voronoi_vertices(const PointPattern& pattern,
                                           const std::vector<Triangle>& triangles,
                                           VertexFilterStats* stats) {
  const double keep_radius = pattern.window.guard_radius();
  std::vector<VertexRecord> out;
  out.reserve(triangles.size());
  for (const auto& t : triangles) {
    const Vec2& a = pattern.points[t.v[0]];
    const Vec2& b = pattern.points[t.v[1]];
    const Vec2& c = pattern.points[t.v[2]];
    const Vec2 center = circumcenter(a, b, c);
    if (std::hypot(center.x, center.y) >= keep_radius) continue;
    const double r = std::hypot(center.x - a.x, center.y - a.y);
    out.push_back({center, r, t.v});
  }
  if (stats) {
    stats->triangles = triangles.size();
    stats->kept = out.size();
  }
  return out;
}

}  // namespace vorcov
