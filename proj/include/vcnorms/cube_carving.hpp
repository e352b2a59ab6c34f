#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "vcnorms/geometry.hpp"

namespace vcnorms {

/// Subset of an indexed ground set: bit i selects point i.
using SubsetMask = std::uint64_t;

/// Largest ground set the bitmask-based routines accept.
inline constexpr std::size_t kMaxGroundSet = 24;

/// One factor of a half-space product. `Bounded` only appears as an internal extension.
struct Interval {
  enum class Kind { LeftRay, RightRay, FullLine, Bounded };

  Kind kind = Kind::FullLine;
  Scalar lo;  // RightRay endpoint, Bounded lower end
  Scalar hi;  // LeftRay endpoint, Bounded upper end

  static Interval left(Scalar x) { return {Kind::LeftRay, Scalar(), std::move(x)}; }
  static Interval right(Scalar x) { return {Kind::RightRay, std::move(x), Scalar()}; }
  static Interval full() { return {}; }
  static Interval bounded(Scalar lo, Scalar hi);

  bool contains(const Scalar& x) const;
  /// Unbounded to the left: a left ray or the whole line.
  bool extends_left() const { return kind == Kind::LeftRay || kind == Kind::FullLine; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Product of one interval per coordinate.
struct HalfProduct {
  std::vector<Interval> intervals;

  std::size_t dim() const { return intervals.size(); }
  friend bool operator==(const HalfProduct&, const HalfProduct&) = default;
};

/// Closed cube prod [lo_i, lo_i + side]; side 0 is a singleton.
struct Cube {
  Point lo;
  Scalar side;

  std::size_t dim() const { return lo.dim(); }
  bool contains(const Point& p) const;
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// No cube carves the subset. `nodes` counts the exclusion assignments explored before giving up.
struct Infeasible {
  std::size_t nodes = 0;
  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

using CarveResult = std::variant<Cube, Infeasible>;

struct ShatterReport {
  std::vector<Point> ground_set;
  std::vector<CarveResult> entries;  // indexed by SubsetMask

  bool shattered() const;
  std::vector<SubsetMask> infeasible_masks() const;
};

struct MaxShattered {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // indices into the input set
  ShatterReport report;
};

struct ExtremaDiagnostic {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (argmin, argmax) per coordinate
  std::size_t once_count = 0;
};

bool halfproduct_contains(const HalfProduct& i, const Point& p);

/// Points of `s` selected by `a`.
std::vector<Point> select(std::span<const Point> s, SubsetMask a);

/// True iff `i` contains exactly the points of `s` selected by `a`.
bool halfproduct_carves(std::span<const Point> s, SubsetMask a, const HalfProduct& i);
bool cube_carves(std::span<const Point> s, SubsetMask a, const Cube& c);

/// True iff the cube lies inside the half-space product.
bool cube_within(const Cube& c, const HalfProduct& i);

/// The cube of side diam(A) inside `i` that carves A, built coordinate by coordinate from the
/// extreme values of A. Throws CarveMismatch when `i` does not carve `a` from `s`.
Cube cube_from_halfspace_carving(std::span<const Point> s, SubsetMask a, const HalfProduct& i);

/// Zero-side cube one unit beyond the upper corner of rect_hull(s).
Cube far_cube(std::span<const Point> s);

/// Exact decision: a cube with s ∩ C = a, or Infeasible after exhausting every assignment of
/// excluded points to a (coordinate, side) that pushes them out.
CarveResult exists_carving_cube(std::span<const Point> s, SubsetMask a);

ShatterReport is_shattered(std::span<const Point> s);

/// Largest shattered subset of `s`; refuses inputs with more than `limit` points.
MaxShattered max_shattered_subset(std::span<const Point> s, std::size_t limit);

ExtremaDiagnostic extrema_diagnostic(std::span<const Point> s);

}  // namespace vcnorms
