#pragma once

// Brute-force reference implementations used only by tests. They share the exact Scalar and Point
// types with the library but none of its algorithms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "vcnorms/geometry.hpp"

namespace oracle {

using vcnorms::Point;
using vcnorms::Scalar;

inline Scalar det3(const Point& a, const Point& b, const Point& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Hyperplane normal through d points (d = 2 or 3), as (normal, offset) with normal . x = offset.
inline std::pair<Point, Scalar> hyperplane(const std::vector<Point>& pts) {
  if (pts.size() == 2) {
    const Point e = pts[1] - pts[0];
    const Point n{-e[1], e[0]};
    return {n, n.dot(pts[0])};
  }
  const Point u = pts[1] - pts[0];
  const Point v = pts[2] - pts[0];
  const Point n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  return {n, n.dot(pts[0])};
}

/// Membership in the hull of a full-dimensional vertex set in R^2 or R^3: p is inside iff it lies on
/// the inner side of every hyperplane spanned by vertices that supports the whole set.
inline bool in_hull_by_facets(const std::vector<Point>& v, const Point& p) {
  const std::size_t d = p.dim();
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(d);
  bool any_facet = false;
  auto check = [&]() -> bool {
    std::vector<Point> pts;
    for (std::size_t i : idx) pts.push_back(v[i]);
    const auto [normal, offset] = hyperplane(pts);
    if (std::all_of(normal.coords().begin(), normal.coords().end(), [](const Scalar& x) { return x.is_zero(); })) {
      return true;
    }
    int side = 0;
    for (const Point& q : v) {
      const int s = (normal.dot(q) - offset).sign();
      if (s == 0) continue;
      if (side == 0) side = s;
      if (s != side) return true;  // not supporting
    }
    if (side == 0) return true;  // all coplanar: not a facet of a full-dimensional set
    any_facet = true;
    const int sp = (normal.dot(p) - offset).sign();
    return sp == 0 || sp == side;
  };
  // All d-subsets of vertex indices.
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d), true);
  do {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) idx[k++] = i;
    }
    if (!check()) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return any_facet;
}

/// Feasibility of carving `a` from integer points with a cube, by enumerating sides from coordinate
/// differences and lower corners from coordinate values, each perturbed by +-1/3 of the smallest
/// nonzero gap. Coordinates are combined through per-coordinate sets of achievable masks.
inline bool cube_carvable(const std::vector<Point>& s, std::uint64_t a) {
  if (a == 0) return true;
  const std::size_t d = s.front().dim();
  std::set<Scalar> values;
  for (const Point& p : s) {
    for (std::size_t j = 0; j < d; ++j) values.insert(p[j]);
  }
  Scalar gap(1);
  bool have_gap = false;
  for (auto it = values.begin(); std::next(it) != values.end() && it != values.end(); ++it) {
    const Scalar g = *std::next(it) - *it;
    if (!have_gap || g < gap) gap = g;
    have_gap = true;
  }
  const Scalar third = gap / Scalar(3);

  std::set<Scalar> sides{Scalar(0)};
  for (const Scalar& x : values) {
    for (const Scalar& y : values) {
      const Scalar diff = (x - y).abs();
      for (const Scalar& cand : {diff, diff - third, diff + third}) {
        if (cand.sign() >= 0) sides.insert(cand);
      }
    }
  }

  for (const Scalar& side : sides) {
    std::vector<std::set<std::uint64_t>> masks(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::set<Scalar> los;
      for (const Point& p : s) {
        for (const Scalar& base : {p[j], p[j] - side}) {
          los.insert(base);
          los.insert(base - third);
          los.insert(base + third);
        }
      }
      for (const Scalar& lo : los) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (lo <= s[i][j] && s[i][j] <= lo + side) m |= std::uint64_t{1} << i;
        }
        masks[j].insert(m);
      }
    }
    // Intersect one achievable mask per coordinate.
    std::set<std::uint64_t> acc = masks[0];
    for (std::size_t j = 1; j < d; ++j) {
      std::set<std::uint64_t> next;
      for (std::uint64_t x : acc) {
        for (std::uint64_t y : masks[j]) {
          if (((x & y) & a) == a) next.insert(x & y);
        }
      }
      acc = std::move(next);
    }
    if (acc.contains(a)) return true;
  }
  return false;
}

/// Random point with integer coordinates in [0, grid].
inline Point grid_point(std::mt19937_64& rng, std::size_t d, long grid) {
  std::vector<Scalar> c;
  for (std::size_t j = 0; j < d; ++j) c.emplace_back(static_cast<long>(rng() % static_cast<std::uint64_t>(grid + 1)));
  return Point(std::move(c));
}

/// Random rational with numerator in [-range*den, range*den] and denominator in [1, den].
inline Scalar rational(std::mt19937_64& rng, long range, long den) {
  const long q = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(den));
  const long span = 2 * range * q + 1;
  const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(span)) - range * q;
  return Scalar(p, q);
}

}  // namespace oracle
