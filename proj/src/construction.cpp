#include "vcnorms/construction.hpp"

#include <string>
#include <utility>

#include "vcnorms/errors.hpp"

namespace vcnorms {

namespace {

using Kind = Interval::Kind;

SubsetMask bit(std::size_t i) { return SubsetMask{1} << i; }

bool is_left_ray(const Interval& i) { return i.kind == Kind::LeftRay; }
bool is_full(const Interval& i) { return i.kind == Kind::FullLine; }

std::string mask_str(SubsetMask m) { return std::to_string(m); }

void require_nice(const NiceSet& n, const char* op) {
  const auto violations = nice_violations(n);
  if (!violations.empty()) {
    throw DomainError(std::string(op) + ": input is not nice: " + violations.front());
  }
}

Scalar coord_min(std::span<const Point> s, std::size_t j) { return rect_hull(s).lo[j]; }
Scalar coord_max(std::span<const Point> s, std::size_t j) { return rect_hull(s).hi[j]; }

HalfProduct replaced(HalfProduct i, std::size_t coord, Interval iv) {
  i.intervals[coord] = std::move(iv);
  return i;
}

// Records a diameter-cube certificate after checking it against the full ground set.
void certify(ShatterableSet& t, SubsetMask mask, Cube cube, std::optional<HalfProduct> source) {
  if (!cube_carves(t.points, mask, cube)) {
    throw InvariantError("construction: certificate for subset " + mask_str(mask) + " does not carve it");
  }
  if (source && !cube_within(cube, *source)) {
    throw InvariantError("construction: certificate for subset " + mask_str(mask) + " leaves its half-product");
  }
  t.report.entries[mask] = std::move(cube);
  t.sources[mask] = std::move(source);
}

ShatterableSet empty_shatterable(std::size_t dim, std::vector<Point> points) {
  ShatterableSet t;
  t.dim = dim;
  t.points = std::move(points);
  t.report.ground_set = t.points;
  const std::size_t count = std::size_t{1} << t.points.size();
  t.report.entries.assign(count, Infeasible{});
  t.sources.assign(count, std::nullopt);
  return t;
}

void add_witness(NiceSet& n, SubsetMask mask, HalfProduct i) {
  if (!halfproduct_carves(n.points, mask, i)) {
    throw InvariantError("construction: lifted witness for subset " + mask_str(mask) + " does not carve it");
  }
  n.patterns[mask] = classify_witness(i, n.dim);
  n.witnesses[mask] = std::move(i);
}

NiceSet empty_nice(std::size_t dim, std::vector<Point> points) {
  NiceSet n;
  n.dim = dim;
  n.points = std::move(points);
  const std::size_t count = std::size_t{1} << n.points.size();
  n.witnesses.assign(count, HalfProduct{});
  n.patterns.assign(count, WitnessPattern::None);
  return n;
}

std::vector<Point> lifted(std::span<const Point> s) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (const Point& p : s) out.push_back(lift_f(p));
  return out;
}

}  // namespace

const char* to_string(WitnessPattern p) {
  switch (p) {
    case WitnessPattern::Even:
      return "even";
    case WitnessPattern::OddSecondFull:
      return "odd-second-full";
    case WitnessPattern::OddThirdFullBoth:
      return "odd-third-full-both-left";
    case WitnessPattern::OddThirdFullEither:
      return "odd-third-full-one-left";
    case WitnessPattern::None:
      return "none";
  }
  return "none";
}

WitnessPattern classify_witness(const HalfProduct& i, std::size_t dim) {
  if (i.dim() != dim || dim < 2) return WitnessPattern::None;
  const auto& iv = i.intervals;
  if (dim % 2 == 0) {
    return is_left_ray(iv[0]) && is_left_ray(iv[1]) ? WitnessPattern::Even : WitnessPattern::None;
  }
  if (is_full(iv[1]) && is_left_ray(iv[0]) && is_left_ray(iv[2])) return WitnessPattern::OddSecondFull;
  if (is_full(iv[2])) {
    if (is_left_ray(iv[0]) && is_left_ray(iv[1])) return WitnessPattern::OddThirdFullBoth;
    if (is_left_ray(iv[0]) || is_left_ray(iv[1])) return WitnessPattern::OddThirdFullEither;
  }
  return WitnessPattern::None;
}

std::vector<std::string> nice_violations(const NiceSet& n) {
  std::vector<std::string> out;
  if (n.dim < 2) {
    out.emplace_back("dimension below 2");
    return out;
  }
  const std::size_t expected = cube_vc_dimension(n.dim) - (n.dim % 2 == 0 ? 1 : 2);
  if (n.points.size() != expected) {
    out.push_back("cardinality " + std::to_string(n.points.size()) + ", expected " + std::to_string(expected));
  }
  for (std::size_t k = 0; k < n.points.size(); ++k) {
    const Point& p = n.points[k];
    if (p.dim() != n.dim) {
      out.push_back("point " + std::to_string(k) + " has the wrong dimension");
      return out;
    }
    if (p[0] != -p[1]) out.push_back("point " + std::to_string(k) + " violates s_1 = -s_2");
  }
  const Point origin = Point::zero(n.dim);
  if (!n.points.empty() && !rect_hull(n.points).contains(origin)) {
    out.emplace_back("origin outside the rectangular hull");
  }
  const std::size_t count = std::size_t{1} << n.points.size();
  if (n.witnesses.size() != count || n.patterns.size() != count) {
    out.emplace_back("witness table does not cover every subset");
    return out;
  }
  for (SubsetMask m = 0; m < count; ++m) {
    const HalfProduct& i = n.witnesses[m];
    if (i.dim() != n.dim) {
      out.push_back("witness " + mask_str(m) + " has the wrong dimension");
      continue;
    }
    if (!halfproduct_contains(i, origin)) out.push_back("witness " + mask_str(m) + " misses the origin");
    if (!halfproduct_carves(n.points, m, i)) out.push_back("witness " + mask_str(m) + " does not carve its subset");
    const WitnessPattern p = classify_witness(i, n.dim);
    if (p == WitnessPattern::None) out.push_back("witness " + mask_str(m) + " has no admissible interval pattern");
    if (p != n.patterns[m]) out.push_back("witness " + mask_str(m) + " records the wrong pattern");
  }
  return out;
}

NiceSet base_nice_r2() {
  NiceSet n = empty_nice(2, {Point{1, -1}, Point{-1, 1}});
  const auto L = [](long x) { return Interval::left(Scalar(x)); };
  add_witness(n, 0b00, HalfProduct{{L(0), L(0)}});
  add_witness(n, 0b01, HalfProduct{{L(1), L(0)}});
  add_witness(n, 0b10, HalfProduct{{L(0), L(1)}});
  add_witness(n, 0b11, HalfProduct{{L(1), L(1)}});
  require_nice(n, "base_nice_r2");
  return n;
}

Point lift_f(const Point& p) {
  if (p.dim() < 2) throw DomainError("lift_f: dimension must be at least 2");
  std::vector<Scalar> c;
  c.reserve(p.dim() + 1);
  c.push_back(p[0]);
  c.push_back(-p[0]);
  for (std::size_t i = 1; i < p.dim(); ++i) c.push_back(p[i]);
  return Point(std::move(c));
}

HalfProduct lift_witness(const HalfProduct& i, LiftVariant variant) {
  if (i.dim() < 2) throw DomainError("lift_witness: dimension must be at least 2");
  HalfProduct out = i;
  const std::size_t at = variant == LiftVariant::InsertAt2 ? 1 : 2;
  out.intervals.insert(out.intervals.begin() + static_cast<std::ptrdiff_t>(at), Interval::full());
  return out;
}

Extension extend_even(const NiceSet& n) {
  if (n.dim % 2 != 0) throw DomainError("extend_even: dimension must be even");
  require_nice(n, "extend_even");
  const std::span<const Point> s = n.points;
  const std::size_t d = n.dim;
  const std::size_t k = s.size();

  Point c = Point::zero(d);
  c[0] = coord_min(s, 0) - linf_diam(s) - Scalar(1);
  c[1] = coord_min(s, 1) - Scalar(1);

  std::vector<Point> t_points(s.begin(), s.end());
  t_points.push_back(c);
  ShatterableSet t = empty_shatterable(d, t_points);
  const SubsetMask c_bit = bit(k);

  for (SubsetMask a = 0; a < bit(k); ++a) {
    const HalfProduct& i = n.witnesses[a];
    if (!halfproduct_contains(i, c)) throw InvariantError("extend_even: adjoined point outside a nice witness");
    certify(t, a | c_bit, cube_from_halfspace_carving(t_points, a | c_bit, i), i);
    if (a == 0) {
      certify(t, 0, far_cube(t_points), std::nullopt);
    } else {
      Cube cube = cube_from_halfspace_carving(s, a, i);
      if (!(c[0] < cube.lo[0])) throw InvariantError("extend_even: adjoined point not left of the cube");
      certify(t, a, std::move(cube), i);
    }
  }

  // Next nice set: f(T) with witnesses lifted from those of S.
  NiceSet next = empty_nice(d + 1, lifted(t_points));
  const Point c_lift = lift_f(c);
  const Scalar m2 = coord_max(lifted(s), 1);
  if (!(m2 < c_lift[1])) throw InvariantError("extend_even: M_2(f(S)) < -c_1 fails");
  // The second factor still tests x_2 = -x_1, so it is narrowed rather than replaced.
  const Scalar cut = max(Scalar(0), m2) + Scalar(1);
  for (SubsetMask a = 0; a < bit(k); ++a) {
    const HalfProduct& i = n.witnesses[a];
    add_witness(next, a | c_bit, lift_witness(i, LiftVariant::InsertAt2));
    add_witness(next, a,
                replaced(lift_witness(i, LiftVariant::InsertAt3), 1, Interval::left(min(i.intervals[1].hi, cut))));
  }
  require_nice(next, "extend_even");
  return {std::move(t), std::move(next)};
}

Extension extend_odd(const NiceSet& n) {
  if (n.dim % 2 != 1 || n.dim < 3) throw DomainError("extend_odd: dimension must be odd and at least 3");
  require_nice(n, "extend_odd");
  const std::span<const Point> s = n.points;
  const std::size_t d = n.dim;
  const std::size_t k = s.size();

  Point b = Point::zero(d);
  for (std::size_t j = 0; j < 3; ++j) b[j] = coord_min(s, j) - Scalar(1);
  std::vector<Point> sb(s.begin(), s.end());
  sb.push_back(b);
  Point c = Point::zero(d);
  c[0] = coord_min(sb, 0) - linf_diam(sb) - Scalar(1);
  for (std::size_t j = 1; j < 3; ++j) c[j] = midpoint(b[j], coord_min(s, j));
  for (std::size_t j = 1; j < 3; ++j) {
    if (!(b[j] < c[j] && c[j] < coord_min(s, j))) throw InvariantError("extend_odd: b_j < c_j < m_j(S) fails");
  }

  std::vector<Point> t_points = sb;
  t_points.push_back(c);
  ShatterableSet t = empty_shatterable(d, t_points);
  const SubsetMask b_bit = bit(k);
  const SubsetMask c_bit = bit(k + 1);

  // Coordinate of the FullLine factor in each witness (0-based: 1 for I_2, 2 for I_3).
  std::vector<std::size_t> full_coord(bit(k));
  for (SubsetMask a = 0; a < bit(k); ++a) {
    const HalfProduct& i = n.witnesses[a];
    switch (n.patterns[a]) {
      case WitnessPattern::OddSecondFull:
        full_coord[a] = 1;
        break;
      case WitnessPattern::OddThirdFullBoth:
        full_coord[a] = 2;
        break;
      default:
        throw DomainError("extend_odd: witness " + mask_str(a) + " does not extend left in its first three factors");
    }
    if (!halfproduct_contains(i, b) || !halfproduct_contains(i, c)) {
      throw InvariantError("extend_odd: adjoined points outside a nice witness");
    }
    const std::size_t j = full_coord[a];

    certify(t, a | b_bit | c_bit, cube_from_halfspace_carving(t_points, a | b_bit | c_bit, i), i);
    certify(t, a | b_bit, cube_from_halfspace_carving(sb, a | b_bit, i), i);
    if (a == 0) {
      certify(t, 0, far_cube(t_points), std::nullopt);
    } else {
      HalfProduct without = replaced(i, j, Interval::right(coord_min(s, j)));
      certify(t, a, cube_from_halfspace_carving(t_points, a, without), without);
    }
    HalfProduct with_c = replaced(i, j, Interval::right(c[j]));
    certify(t, a | c_bit, cube_from_halfspace_carving(t_points, a | c_bit, with_c), with_c);
  }

  NiceSet next = empty_nice(d + 1, lifted(t_points));
  const std::vector<Point> fs = lifted(s);
  const Point b_lift = lift_f(b);
  const Point c_lift = lift_f(c);
  const Scalar m2 = coord_max(fs, 1);
  if (!(m2 < b_lift[1] && b_lift[1] < c_lift[1])) {
    throw InvariantError("extend_odd: M_2(f(S)) < b'_2 < c'_2 fails");
  }
  const Scalar wide = max(Scalar(0), c_lift[1]) + Scalar(1);
  for (SubsetMask a = 0; a < bit(k); ++a) {
    const HalfProduct lifted_i = lift_witness(n.witnesses[a], LiftVariant::InsertAt2);
    add_witness(next, a, replaced(lifted_i, 1, Interval::left(m2)));
    add_witness(next, a | b_bit, replaced(lifted_i, 1, Interval::left(b_lift[1])));
    add_witness(next, a | b_bit | c_bit, replaced(lifted_i, 1, Interval::left(c_lift[1])));
    const std::size_t shifted = full_coord[a] + 1;
    add_witness(next, a | c_bit,
                replaced(replaced(lifted_i, shifted, Interval::right(c_lift[shifted])), 1, Interval::left(wide)));
  }
  require_nice(next, "extend_odd");
  return {std::move(t), std::move(next)};
}

NiceSet nice_set(std::size_t d, std::size_t max_dim) {
  if (d < 2) throw DomainError("nice_set: dimension must be at least 2");
  if (d > max_dim) throw RefusalError("nice_set: dimension " + std::to_string(d) + " exceeds the guard");
  NiceSet n = base_nice_r2();
  while (n.dim < d) n = (n.dim % 2 == 0 ? extend_even(n) : extend_odd(n)).next;
  return n;
}

ShatterableSet build_shatterable_set(std::size_t d, std::size_t max_dim) {
  if (d == 0) throw DomainError("build_shatterable_set: dimension must be at least 1");
  if (d > max_dim) {
    throw RefusalError("build_shatterable_set: dimension " + std::to_string(d) + " exceeds the guard of " +
                       std::to_string(max_dim));
  }
  ShatterableSet t;
  if (d == 1) {
    t = empty_shatterable(1, {Point{0}, Point{1}});
    certify(t, 0b00, Cube{Point{3}, Scalar(1)}, std::nullopt);
    certify(t, 0b01, Cube{Point{0}, Scalar(1, 2)}, std::nullopt);
    certify(t, 0b10, Cube{Point{Scalar(1, 2)}, Scalar(1, 2)}, std::nullopt);
    certify(t, 0b11, Cube{Point{0}, Scalar(1)}, std::nullopt);
  } else {
    const NiceSet n = nice_set(d, max_dim);
    t = (d % 2 == 0 ? extend_even(n) : extend_odd(n)).shatterable;
  }
  if (t.points.size() != cube_vc_dimension(d) || !t.report.shattered()) {
    throw InvariantError("build_shatterable_set: construction is incomplete");
  }
  for (SubsetMask m = 0; m < t.report.entries.size(); ++m) {
    if (!cube_carves(t.points, m, std::get<Cube>(t.report.entries[m]))) {
      throw InvariantError("build_shatterable_set: certificate " + mask_str(m) + " fails re-verification");
    }
  }
  return t;
}

}  // namespace vcnorms
