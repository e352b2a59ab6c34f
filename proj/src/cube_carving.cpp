#include "vcnorms/cube_carving.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "vcnorms/errors.hpp"

namespace vcnorms {

namespace {

void require_subset(std::span<const Point> s, SubsetMask a, const char* op) {
  if (s.size() > kMaxGroundSet) throw RefusalError(std::string(op) + ": ground set too large");
  if (s.size() < 64 && (a >> s.size()) != 0) {
    throw DomainError(std::string(op) + ": subset mask selects points outside the ground set");
  }
}

bool selected(SubsetMask a, std::size_t i) { return ((a >> i) & 1U) != 0; }

// Search state for one carving problem with nonempty A. Excluded points are pushed out of the
// cube through one (coordinate, side) each; a cube of side diam(A) exists iff for every coordinate
// the lowest high-pushed value minus the highest low-pushed value exceeds diam(A).
class ExclusionSearch {
 public:
  struct Option {
    std::size_t coord;
    bool high;
  };

  ExclusionSearch(std::span<const Point> s, SubsetMask a) : s_(s) {
    const std::vector<Point> inside = select(s, a);
    const Box box = rect_hull(inside);
    lo_ = box.lo;
    hi_ = box.hi;
    diam_ = linf_diam(inside);
    const std::size_t d = lo_.dim();
    low_bound_.assign(d, std::nullopt);
    high_bound_.assign(d, std::nullopt);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (selected(a, i)) continue;
      std::vector<Option> opts;
      for (std::size_t j = 0; j < d; ++j) {
        if (s[i][j] < lo_[j]) opts.push_back({j, false});
        if (s[i][j] > hi_[j]) opts.push_back({j, true});
      }
      excluded_.push_back(i);
      options_.push_back(std::move(opts));
    }
  }

  CarveResult run() {
    std::vector<bool> done(excluded_.size(), false);
    if (search(done)) return build_cube();
    return Infeasible{nodes_};
  }

 private:
  bool admissible(std::size_t point, const Option& o) const {
    const Scalar& x = s_[point][o.coord];
    const auto& low = low_bound_[o.coord];
    const auto& high = high_bound_[o.coord];
    if (o.high) return !low || x - *low > diam_;
    return !high || *high - x > diam_;
  }

  // Assigning this option leaves the state unchanged, so it dominates every alternative.
  bool free_option(std::size_t point, const Option& o) const {
    const Scalar& x = s_[point][o.coord];
    if (o.high) return high_bound_[o.coord] && x >= *high_bound_[o.coord];
    return low_bound_[o.coord] && x <= *low_bound_[o.coord];
  }

  bool search(std::vector<bool>& done) {
    ++nodes_;
    std::optional<std::size_t> pick;
    std::size_t pick_count = 0;
    for (std::size_t k = 0; k < excluded_.size(); ++k) {
      if (done[k]) continue;
      std::size_t count = 0;
      bool free = false;
      for (const Option& o : options_[k]) {
        if (!admissible(excluded_[k], o)) continue;
        ++count;
        free = free || free_option(excluded_[k], o);
      }
      if (count == 0) return false;
      if (free) {
        done[k] = true;
        const bool ok = search(done);
        done[k] = false;
        return ok;
      }
      if (!pick || count < pick_count) {
        pick = k;
        pick_count = count;
      }
    }
    if (!pick) return true;

    const std::size_t k = *pick;
    const std::size_t point = excluded_[k];
    done[k] = true;
    for (const Option& o : options_[k]) {
      if (!admissible(point, o)) continue;
      auto& slot = o.high ? high_bound_[o.coord] : low_bound_[o.coord];
      const std::optional<Scalar> saved = slot;
      slot = s_[point][o.coord];
      if (search(done)) return true;
      slot = saved;
    }
    done[k] = false;
    return false;
  }

  Cube build_cube() const {
    Cube c{Point::zero(lo_.dim()), diam_};
    for (std::size_t j = 0; j < lo_.dim(); ++j) {
      const Scalar closed_low = hi_[j] - diam_;
      const auto& low = low_bound_[j];
      const auto& high = high_bound_[j];
      if (!low || closed_low > *low) {
        c.lo[j] = closed_low;
      } else if (!high || lo_[j] < *high - diam_) {
        c.lo[j] = lo_[j];
      } else {
        c.lo[j] = midpoint(*low, *high - diam_);
      }
    }
    return c;
  }

  std::span<const Point> s_;
  Point lo_;
  Point hi_;
  Scalar diam_;
  std::vector<std::size_t> excluded_;
  std::vector<std::vector<Option>> options_;
  std::vector<std::optional<Scalar>> low_bound_;
  std::vector<std::optional<Scalar>> high_bound_;
  std::size_t nodes_ = 0;
};

// Shattering check that stops at the first infeasible subset. Large subsets are tried first since
// those fail most often.
bool quick_shattered(std::span<const Point> s) {
  const SubsetMask full = (SubsetMask{1} << s.size()) - 1;
  std::vector<SubsetMask> masks(full + 1);
  for (SubsetMask m = 0; m <= full; ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](SubsetMask x, SubsetMask y) { return std::popcount(x) > std::popcount(y); });
  return std::all_of(masks.begin(), masks.end(), [&](SubsetMask m) {
    return std::holds_alternative<Cube>(exists_carving_cube(s, m));
  });
}

}  // namespace

Interval Interval::bounded(Scalar lo, Scalar hi) {
  if (hi < lo) throw DomainError("Interval: bounded interval with lo > hi");
  return {Kind::Bounded, std::move(lo), std::move(hi)};
}

bool Interval::contains(const Scalar& x) const {
  switch (kind) {
    case Kind::LeftRay:
      return x <= hi;
    case Kind::RightRay:
      return x >= lo;
    case Kind::FullLine:
      return true;
    case Kind::Bounded:
      return lo <= x && x <= hi;
  }
  return false;
}

bool Cube::contains(const Point& p) const {
  if (p.dim() != dim()) throw DomainError("Cube: dimension mismatch");
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] < lo[i] || p[i] > lo[i] + side) return false;
  }
  return true;
}

bool ShatterReport::shattered() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CarveResult& r) { return std::holds_alternative<Cube>(r); });
}

std::vector<SubsetMask> ShatterReport::infeasible_masks() const {
  std::vector<SubsetMask> out;
  for (SubsetMask m = 0; m < entries.size(); ++m) {
    if (std::holds_alternative<Infeasible>(entries[m])) out.push_back(m);
  }
  return out;
}

bool halfproduct_contains(const HalfProduct& i, const Point& p) {
  if (i.dim() != p.dim()) throw DomainError("halfproduct_contains: dimension mismatch");
  for (std::size_t j = 0; j < p.dim(); ++j) {
    if (!i.intervals[j].contains(p[j])) return false;
  }
  return true;
}

std::vector<Point> select(std::span<const Point> s, SubsetMask a) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (selected(a, i)) out.push_back(s[i]);
  }
  return out;
}

bool halfproduct_carves(std::span<const Point> s, SubsetMask a, const HalfProduct& i) {
  require_subset(s, a, "halfproduct_carves");
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (halfproduct_contains(i, s[k]) != selected(a, k)) return false;
  }
  return true;
}

bool cube_carves(std::span<const Point> s, SubsetMask a, const Cube& c) {
  require_subset(s, a, "cube_carves");
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (c.contains(s[k]) != selected(a, k)) return false;
  }
  return true;
}

bool cube_within(const Cube& c, const HalfProduct& i) {
  if (c.dim() != i.dim()) throw DomainError("cube_within: dimension mismatch");
  for (std::size_t j = 0; j < c.dim(); ++j) {
    const Interval& iv = i.intervals[j];
    if (!iv.contains(c.lo[j]) || !iv.contains(c.lo[j] + c.side)) return false;
  }
  return true;
}

Cube cube_from_halfspace_carving(std::span<const Point> s, SubsetMask a, const HalfProduct& i) {
  require_subset(s, a, "cube_from_halfspace_carving");
  if (a == 0) throw DomainError("cube_from_halfspace_carving: empty subset has no diameter");
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (halfproduct_contains(i, s[k]) != selected(a, k)) {
      throw CarveMismatch("cube_from_halfspace_carving: half-product does not carve the subset at point " +
                              std::to_string(k),
                          k);
    }
  }
  const std::vector<Point> inside = select(s, a);
  const Box box = rect_hull(inside);
  const Scalar r = linf_diam(inside);
  Cube c{Point::zero(box.dim()), r};
  for (std::size_t j = 0; j < box.dim(); ++j) {
    c.lo[j] = i.intervals[j].kind == Interval::Kind::RightRay ? box.lo[j] : box.hi[j] - r;
  }
  if (!cube_within(c, i) || !cube_carves(s, a, c)) {
    throw InvariantError("cube_from_halfspace_carving: constructed cube violates its contract");
  }
  return c;
}

Cube far_cube(std::span<const Point> s) {
  Point corner = rect_hull(s).hi;
  for (std::size_t j = 0; j < corner.dim(); ++j) corner[j] += Scalar(1);
  return Cube{std::move(corner), Scalar()};
}

CarveResult exists_carving_cube(std::span<const Point> s, SubsetMask a) {
  require_subset(s, a, "exists_carving_cube");
  if (s.empty()) throw DomainError("exists_carving_cube: empty ground set");
  if (a == 0) return far_cube(s);
  CarveResult result = ExclusionSearch(s, a).run();
  if (const Cube* c = std::get_if<Cube>(&result); c && !cube_carves(s, a, *c)) {
    throw InvariantError("exists_carving_cube: witness cube does not carve the subset");
  }
  return result;
}

ShatterReport is_shattered(std::span<const Point> s) {
  if (s.size() > kMaxGroundSet) throw RefusalError("is_shattered: ground set too large");
  if (s.empty()) throw DomainError("is_shattered: empty ground set");
  ShatterReport report;
  report.ground_set.assign(s.begin(), s.end());
  const SubsetMask count = SubsetMask{1} << s.size();
  report.entries.reserve(count);
  for (SubsetMask m = 0; m < count; ++m) report.entries.push_back(exists_carving_cube(s, m));
  return report;
}

MaxShattered max_shattered_subset(std::span<const Point> s, std::size_t limit) {
  if (s.size() > limit || s.size() > kMaxGroundSet) {
    throw RefusalError("max_shattered_subset: " + std::to_string(s.size()) + " points exceed the limit of " +
                       std::to_string(limit));
  }
  for (std::size_t k = s.size(); k > 0; --k) {
    // Lexicographic k-combinations of indices.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Point> sub;
      sub.reserve(k);
      for (std::size_t i : idx) sub.push_back(s[i]);
      if (quick_shattered(sub)) return MaxShattered{k, idx, is_shattered(sub)};
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == s.size() - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return MaxShattered{0, {}, ShatterReport{}};
}

ExtremaDiagnostic extrema_diagnostic(std::span<const Point> s) {
  if (s.empty()) throw DomainError("extrema_diagnostic: empty input");
  const Box box = rect_hull(s);
  ExtremaDiagnostic diag;
  std::vector<std::size_t> appearances(s.size(), 0);
  for (std::size_t j = 0; j < box.dim(); ++j) {
    std::size_t argmin = 0;
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i][j] < s[argmin][j]) argmin = i;
      if (s[i][j] > s[argmax][j]) argmax = i;
    }
    diag.pairs.emplace_back(argmin, argmax);
    ++appearances[argmin];
    ++appearances[argmax];
  }
  diag.once_count = static_cast<std::size_t>(std::count(appearances.begin(), appearances.end(), 1U));
  return diag;
}

}  // namespace vcnorms
