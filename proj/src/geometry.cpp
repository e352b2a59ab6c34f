#include "vcnorms/geometry.hpp"

#include <algorithm>
#include <string>

#include "vcnorms/errors.hpp"

namespace vcnorms {

namespace {

void require_same_dim(std::span<const Point> points, const char* op) {
  for (const Point& p : points) {
    if (p.dim() != points.front().dim()) {
      throw DomainError(std::string(op) + ": points of mixed dimension");
    }
  }
}

void require_planar(const Point& p, const char* op) {
  if (p.dim() != 2) throw DomainError(std::string(op) + ": expected a planar point");
}

Scalar cross(const Point& u, const Point& v) { return u[0] * v[1] - u[1] * v[0]; }

// Closed segment membership for a point already known to be collinear with [a, b].
bool within_segment(const Point& a, const Point& b, const Point& p) {
  return min(a[0], b[0]) <= p[0] && p[0] <= max(a[0], b[0]) && min(a[1], b[1]) <= p[1] &&
         p[1] <= max(a[1], b[1]);
}

}  // namespace

Point& Point::operator+=(const Point& o) {
  if (o.dim() != dim()) throw DomainError("Point: dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  if (o.dim() != dim()) throw DomainError("Point: dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Point& Point::operator*=(const Scalar& k) {
  for (Scalar& c : coords_) c *= k;
  return *this;
}

Point Point::operator-() const {
  Point r = *this;
  for (Scalar& c : r.coords_) c = -c;
  return r;
}

Scalar Point::dot(const Point& o) const {
  if (o.dim() != dim()) throw DomainError("Point: dimension mismatch");
  Scalar s;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * o.coords_[i];
  return s;
}

bool Box::contains(const Point& p) const {
  if (p.dim() != dim()) throw DomainError("Box: dimension mismatch");
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

Scalar orient2d(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

Point embed(const Point& planar, const Scalar& height) {
  require_planar(planar, "embed");
  return Point{planar[0], planar[1], height};
}

Box rect_hull(std::span<const Point> points) {
  if (points.empty()) throw DomainError("rect_hull: empty input");
  require_same_dim(points, "rect_hull");
  Box box{points.front(), points.front()};
  for (const Point& p : points.subspan(1)) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (p[i] < box.lo[i]) box.lo[i] = p[i];
      if (p[i] > box.hi[i]) box.hi[i] = p[i];
    }
  }
  return box;
}

Scalar linf_diam(std::span<const Point> points) {
  const Box box = rect_hull(points);
  Scalar d;
  for (std::size_t i = 0; i < box.dim(); ++i) d = max(d, box.hi[i] - box.lo[i]);
  return d;
}

RadonResult radon_partition(std::span<const Point> points) {
  if (points.size() != 4) throw DomainError("radon_partition: expected exactly 4 points");
  for (const Point& p : points) require_planar(p, "radon_partition");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (points[i] == points[j]) throw DomainError("radon_partition: duplicate points");
    }
  }

  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i) others.push_back(points[j]);
    }
    if (polygon_contains(convex_hull_2d(others), points[i])) return InteriorPoint{i};
  }

  // Convex position: no three points are collinear, so exactly one pairing crosses properly.
  for (std::size_t k = 1; k < 4; ++k) {
    std::array<std::size_t, 2> rest{};
    std::size_t n = 0;
    for (std::size_t j = 1; j < 4; ++j) {
      if (j != k) rest[n++] = j;
    }
    const Point& p = points[0];
    const Point& q = points[k];
    const Point& r = points[rest[0]];
    const Point& u = points[rest[1]];
    const bool crosses = orient2d(p, q, r).sign() * orient2d(p, q, u).sign() < 0 &&
                         orient2d(r, u, p).sign() * orient2d(r, u, q).sign() < 0;
    if (!crosses) continue;
    const Scalar t = cross(r - p, u - r) / cross(q - p, u - r);
    RadonSplit split;
    split.pair1 = {p, q};
    split.pair1_index = {0, k};
    split.pair2 = {r, u};
    split.pair2_index = rest;
    split.crossing = p + (q - p) * t;
    return split;
  }
  throw InvariantError("radon_partition: convex-position quadruple without crossing diagonals");
}

bool polygon_contains(const ConvexPolygon& c, const Point& p) {
  require_planar(p, "polygon_contains");
  const auto v = c.vertices();
  if (v.empty()) return false;
  if (v.size() == 1) return v[0] == p;
  if (v.size() == 2) return orient2d(v[0], v[1], p).is_zero() && within_segment(v[0], v[1], p);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient2d(v[i], v[(i + 1) % v.size()], p).sign() < 0) return false;
  }
  return true;
}

ConvexPolygon convex_hull_2d(std::span<const Point> points) {
  if (points.empty()) throw DomainError("convex_hull_2d: empty input");
  for (const Point& p : points) require_planar(p, "convex_hull_2d");

  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return ConvexPolygon(std::move(pts));

  // Andrew's monotone chain; collinear points are dropped so every kept vertex is extreme.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], p).sign() <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return ConvexPolygon(std::move(hull));
}

bool point_in_hull(std::span<const Point> vertices, const Point& p) {
  return convex_coefficients(vertices, p).has_value();
}

std::vector<Point> scale_translate(std::span<const Point> points, const Scalar& lambda, const Point& r) {
  if (lambda.sign() <= 0) throw DomainError("scale_translate: lambda must be positive");
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& q : points) out.push_back(q * lambda + r);
  return out;
}

ConvexPolygon scale_translate(const ConvexPolygon& c, const Scalar& lambda, const Point& r) {
  // Positive homothety preserves the vertex order, re-running the hull keeps the type's invariant.
  return convex_hull_2d(scale_translate(c.vertices(), lambda, r));
}

Scalar max_inscribe_scale(const ConvexPolygon& inner, const ConvexPolygon& outer) {
  const Point origin = Point::zero(2);
  if (!outer.is_body()) throw DomainError("max_inscribe_scale: outer polygon has empty interior");
  if (inner.size() == 0 || !polygon_contains(inner, origin) || !polygon_contains(outer, origin)) {
    throw DomainError("max_inscribe_scale: origin outside a polygon");
  }
  const auto ov = outer.vertices();
  std::optional<Scalar> best;
  for (const Point& v : inner.vertices()) {
    if (v == origin) continue;
    std::optional<Scalar> exit;
    for (std::size_t i = 0; i < ov.size(); ++i) {
      const Point e = ov[(i + 1) % ov.size()] - ov[i];
      const Scalar ev = cross(e, v);
      if (ev.sign() >= 0) continue;
      const Scalar t = cross(e, ov[i]) / ev;
      if (!exit || t < *exit) exit = t;
    }
    if (!exit) throw InvariantError("max_inscribe_scale: bounded polygon without an exit edge");
    if (!best || *exit < *best) best = *exit;
  }
  if (!best) throw DomainError("max_inscribe_scale: inner polygon is the origin, scale is unbounded");
  return *best;
}

Scalar cone_slice_factor(const Scalar& base_height, const Scalar& apex, const Scalar& height) {
  if (!(apex > height) || !(apex > base_height)) {
    throw DomainError("cone_slice: apex must lie strictly above both heights");
  }
  return (apex - height) / (apex - base_height);
}

std::vector<Point> cone_slice(std::span<const Point> base, const Scalar& base_height, const Scalar& apex,
                              const Scalar& height) {
  const Scalar factor = cone_slice_factor(base_height, apex, height);
  std::vector<Point> out;
  out.reserve(base.size());
  for (const Point& q : base) out.push_back(q * factor);
  return out;
}

}  // namespace vcnorms
