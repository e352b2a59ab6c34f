#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "vcnorms/construction.hpp"
#include "vcnorms/errors.hpp"

using namespace vcnorms;

namespace {

Scalar coord_min(const std::vector<Point>& s, std::size_t j) {
  Scalar m = s.front()[j];
  for (const Point& p : s) m = min(m, p[j]);
  return m;
}

Scalar coord_max(const std::vector<Point>& s, std::size_t j) {
  Scalar m = s.front()[j];
  for (const Point& p : s) m = max(m, p[j]);
  return m;
}

}  // namespace

TEST_CASE("cube_vc_dimension") {
  CHECK(cube_vc_dimension(1) == 2);
  CHECK(cube_vc_dimension(2) == 3);
  CHECK(cube_vc_dimension(3) == 5);
  CHECK(cube_vc_dimension(4) == 6);
  CHECK(cube_vc_dimension(5) == 8);
}

TEST_CASE("base nice set") {
  const NiceSet base = base_nice_r2();
  CHECK(base.dim == 2);
  CHECK(base.points.size() == 2);
  CHECK(nice_violations(base).empty());
  for (const Point& p : base.points) CHECK(p[0] == -p[1]);
  CHECK(halfproduct_contains(base.witnesses[0b11], Point{0, 0}));
}

TEST_CASE("lift_f and lift_witness") {
  CHECK(lift_f(Point{1, -1}) == Point{1, -1, -1});
  CHECK(lift_f(Point{0, 0, 0}) == Point{0, 0, 0, 0});
  CHECK(lift_f(Point{2, -2, 5}) == Point{2, -2, -2, 5});

  const HalfProduct ll{{Interval::left(0), Interval::left(0)}};
  CHECK(lift_witness(ll, LiftVariant::InsertAt2) ==
        HalfProduct{{Interval::left(0), Interval::full(), Interval::left(0)}});
  const HalfProduct l1l0{{Interval::left(1), Interval::left(0)}};
  CHECK(lift_witness(l1l0, LiftVariant::InsertAt3) ==
        HalfProduct{{Interval::left(1), Interval::left(0), Interval::full()}});
}

TEST_CASE("both lifted witnesses carve the lifted subset") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 2 + rng() % 2;
    std::vector<Point> s;
    for (std::size_t k = 0; k < 2 + rng() % 5; ++k) {
      std::vector<Scalar> c;
      const Scalar x = oracle::rational(rng, 3, 2);
      c.push_back(x);
      c.push_back(-x);
      for (std::size_t j = 2; j < d; ++j) c.push_back(oracle::rational(rng, 3, 2));
      s.emplace_back(std::move(c));
    }
    std::vector<Interval> iv;
    for (std::size_t j = 0; j < d; ++j) {
      const Scalar at = oracle::rational(rng, 2, 2);
      switch (rng() % 3) {
        case 0: iv.push_back(Interval::left(at)); break;
        case 1: iv.push_back(Interval::right(at)); break;
        default: iv.push_back(Interval::full()); break;
      }
    }
    const HalfProduct i{iv};
    SubsetMask a = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (halfproduct_contains(i, s[k])) a |= SubsetMask{1} << k;
    }
    std::vector<Point> lifted;
    for (const Point& p : s) lifted.push_back(lift_f(p));
    CHECK(halfproduct_carves(lifted, a, lift_witness(i, LiftVariant::InsertAt2)));
    CHECK(halfproduct_carves(lifted, a, lift_witness(i, LiftVariant::InsertAt3)));
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("extend_even and extend_odd cardinalities and orderings") {
  const NiceSet base = base_nice_r2();
  const Extension e2 = extend_even(base);
  CHECK(e2.shatterable.points.size() == 3);
  CHECK(e2.shatterable.report.shattered());
  CHECK(e2.next.dim == 3);
  CHECK(e2.next.points.size() == 3);
  CHECK(nice_violations(e2.next).empty());
  CHECK(std::holds_alternative<Cube>(e2.shatterable.report.entries[0b100]));

  const Extension e3 = extend_odd(e2.next);
  CHECK(e3.shatterable.dim == 3);
  CHECK(e3.shatterable.points.size() == 5);
  CHECK(e3.shatterable.report.shattered());
  CHECK(nice_violations(e3.next).empty());

  // The two adjoined points follow the nice set; b_2 < c_2 < m_2(S).
  const std::vector<Point>& s = e2.next.points;
  const Point& b = e3.shatterable.points[s.size()];
  const Point& c = e3.shatterable.points[s.size() + 1];
  CHECK(b[1] < c[1]);
  CHECK(c[1] < coord_min(s, 1));

  // In the lifted set, M_2(f(S)) < b'_2 < c'_2.
  const std::vector<Point>& lifted = e3.next.points;
  const std::vector<Point> fs(lifted.begin(), lifted.begin() + static_cast<std::ptrdiff_t>(s.size()));
  CHECK(coord_max(fs, 1) < lifted[s.size()][1]);
  CHECK(lifted[s.size()][1] < lifted[s.size() + 1][1]);
}

TEST_CASE("extend rejects broken input") {
  NiceSet broken = base_nice_r2();
  broken.points[0][0] += Scalar(1);
  CHECK_THROWS_AS(extend_even(broken), DomainError);
  CHECK_THROWS_AS(extend_odd(base_nice_r2()), DomainError);
}

TEST_CASE("build_shatterable_set") {
  const auto one = build_shatterable_set(1);
  REQUIRE(one.points.size() == 2);
  CHECK(one.points[0] == Point{0});
  CHECK(one.points[1] == Point{1});
  const std::vector<std::pair<Scalar, Scalar>> expected{
      {Scalar(3), Scalar(4)}, {Scalar(0), Scalar(1, 2)}, {Scalar(1, 2), Scalar(1)}, {Scalar(0), Scalar(1)}};
  for (SubsetMask a = 0; a < 4; ++a) {
    const Cube& c = std::get<Cube>(one.report.entries[a]);
    CHECK(c.lo[0] == expected[a].first);
    CHECK(c.lo[0] + c.side == expected[a].second);
  }

  for (std::size_t d = 1; d <= 6; ++d) {
    const auto set = build_shatterable_set(d);
    CHECK(set.points.size() == cube_vc_dimension(d));
    CHECK(set.report.shattered());
    for (SubsetMask a = 0; a < set.report.entries.size(); ++a) {
      CHECK(cube_carves(set.points, a, std::get<Cube>(set.report.entries[a])));
    }
    if (d <= 4) CHECK(is_shattered(set.points).shattered());
  }

  CHECK_THROWS_AS(build_shatterable_set(0), DomainError);
  CHECK_THROWS_AS(build_shatterable_set(11), RefusalError);
  CHECK_THROWS_AS(build_shatterable_set(4, 3), RefusalError);
}

TEST_CASE("build_shatterable_set is deterministic") {
  const auto a = build_shatterable_set(5);
  const auto b = build_shatterable_set(5);
  CHECK(a.points == b.points);
  CHECK(a.report.entries == b.report.entries);
}

TEST_CASE("classify_witness") {
  CHECK(classify_witness(HalfProduct{{Interval::left(0), Interval::left(0)}}, 2) == WitnessPattern::Even);
  CHECK(classify_witness(HalfProduct{{Interval::left(0), Interval::full(), Interval::left(1)}}, 3) ==
        WitnessPattern::OddSecondFull);
  CHECK(classify_witness(HalfProduct{{Interval::left(0), Interval::left(0), Interval::full()}}, 3) ==
        WitnessPattern::OddThirdFullBoth);
  CHECK(classify_witness(HalfProduct{{Interval::right(0), Interval::left(0), Interval::full()}}, 3) ==
        WitnessPattern::OddThirdFullEither);
  CHECK(classify_witness(HalfProduct{{Interval::right(0), Interval::right(0)}}, 2) == WitnessPattern::None);
}
