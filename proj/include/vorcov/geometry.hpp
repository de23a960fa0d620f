#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vorcov {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Disk observation window centered at the origin. Vertices are only kept
// inside the guard region (radius - guard) to limit edge bias.
struct Window {
  double radius = 0.0;
  double guard = 0.0;
  double guard_radius() const { return radius - guard; }
  double guard_area() const;
  void validate() const;
};

struct PointPattern {
  Window window;
  std::vector<Vec2> points;
  std::uint64_t seed = 0;
};

// Delaunay triangle as ascending indices into the point list.
struct Triangle {
  std::array<std::int32_t, 3> v;
};

// A Voronoi vertex: circumcenter of a Delaunay triangle, its circumradius,
// and the three generator BS indices (ascending).
struct VertexRecord {
  Vec2 position;
  double circumradius = 0.0;
  std::array<std::int32_t, 3> generators;
};

struct VertexFilterStats {
  std::size_t triangles = 0;  // total Delaunay triangles
  std::size_t kept = 0;       // circumcenters inside the guard region
};

struct DegeneratePatternError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Homogeneous PPP on the disk: Poisson(lambda * area) points, iid uniform.
// Throws DegeneratePatternError when fewer than 3 points are drawn (caller
// retries with a fresh sub-seed).
PointPattern sample_ppp(double lambda, const Window& window, std::uint64_t seed);

// Delaunay triangulation by incremental insertion (Bowyer-Watson) with
// filtered orientation/in-circle predicates (double, then long double);
// exact cocircular ties resolve to "not in conflict", so ties keep the
// first diagonal in insertion order.
std::vector<Triangle> delaunay(const PointPattern& pattern);

// Circumcenters of the triangles that fall inside the guard region.
std::vector<VertexRecord> voronoi_vertices(const PointPattern& pattern,
                                           const std::vector<Triangle>& triangles,
                                           VertexFilterStats* stats = nullptr);

Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c);

// Defaults: guard 4/sqrt(lambda*pi) (circumradius tail < 2e-6 beyond it),
// window sized so the guard region keeps 80% of the window area.
double default_guard(double lambda);
double default_window_radius(double lambda);

}  // namespace vorcov
