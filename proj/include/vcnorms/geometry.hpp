#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "vcnorms/scalar.hpp"

namespace vcnorms {

/// A point of Q^d. The dimension is the number of coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Scalar> coords) : coords_(coords) {}

  static Point zero(std::size_t dim) { return Point(std::vector<Scalar>(dim)); }

  std::size_t dim() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Scalar> coords() const { return coords_; }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(const Scalar& k);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, const Scalar& k) { return a *= k; }
  friend Point operator*(const Scalar& k, Point a) { return a *= k; }
  Point operator-() const;

  Scalar dot(const Point& o) const;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                                  b.coords_.end());
  }

 private:
  std::vector<Scalar> coords_;
};

/// Closed axis-aligned box [lo, hi].
struct Box {
  Point lo;
  Point hi;

  std::size_t dim() const { return lo.dim(); }
  bool contains(const Point& p) const;
};

/// Closed convex polygon stored as its extreme points in counter-clockwise order, starting at the
/// lexicographically smallest vertex. One vertex is a point, two vertices a segment.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// Non-empty interior.
  bool is_body() const { return vertices_.size() >= 3; }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  friend ConvexPolygon convex_hull_2d(std::span<const Point> points);
  explicit ConvexPolygon(std::vector<Point> v) : vertices_(std::move(v)) {}

  std::vector<Point> vertices_;
};

/// Two-two partition of four planar points whose segments cross. Indices refer to the input order;
/// `pair1` holds the point with the smallest index.
struct RadonSplit {
  std::array<Point, 2> pair1;
  std::array<Point, 2> pair2;
  std::array<std::size_t, 2> pair1_index{};
  std::array<std::size_t, 2> pair2_index{};
  Point crossing;
};

/// The input point at `index` lies in the closed hull of the other three.
struct InteriorPoint {
  std::size_t index = 0;
};

using RadonResult = std::variant<RadonSplit, InteriorPoint>;

/// Twice the signed area of (a, b, c); positive for a left turn.
Scalar orient2d(const Point& a, const Point& b, const Point& c);

/// Embeds a planar point into R^3 at the given third coordinate.
Point embed(const Point& planar, const Scalar& height);

Box rect_hull(std::span<const Point> points);
Scalar linf_diam(std::span<const Point> points);

RadonResult radon_partition(std::span<const Point> points);

bool polygon_contains(const ConvexPolygon& c, const Point& p);
ConvexPolygon convex_hull_2d(std::span<const Point> points);

/// Convex-combination weights of `p` over `vertices`, found by an exact phase-one simplex, or
/// nullopt when `p` is outside the hull. Weights follow the order of `vertices`.
std::optional<std::vector<Scalar>> convex_coefficients(std::span<const Point> vertices, const Point& p);
bool point_in_hull(std::span<const Point> vertices, const Point& p);

std::vector<Point> scale_translate(std::span<const Point> points, const Scalar& lambda, const Point& r);
ConvexPolygon scale_translate(const ConvexPolygon& c, const Scalar& lambda, const Point& r);

/// Largest gamma with gamma * inner contained in outer. Both must contain the origin and `outer`
/// must be a body.
Scalar max_inscribe_scale(const ConvexPolygon& inner, const ConvexPolygon& outer);

/// Factor (apex - height) / (apex - base_height): the cone over a set placed at `base_height` with
/// apex at `apex` meets the plane at `height` in the set scaled by this factor.
Scalar cone_slice_factor(const Scalar& base_height, const Scalar& apex, const Scalar& height);
std::vector<Point> cone_slice(std::span<const Point> base, const Scalar& base_height, const Scalar& apex,
                              const Scalar& height);

}  // namespace vcnorms
