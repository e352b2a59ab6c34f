#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "vcnorms/errors.hpp"
#include "vcnorms/planar_norms.hpp"

using namespace vcnorms;

namespace {

const std::vector<Point> kCross{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
const std::vector<Point> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

ConvexPolygon centred_square() { return convex_hull_2d(std::vector<Point>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

ConvexPolygon hexagon() {
  return convex_hull_2d(std::vector<Point>{{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}});
}

void check_witness(const HullWitness& w) {
  Scalar total;
  Point sum = Point::zero(2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(w.coefficients[i].sign() >= 0);
    total += w.coefficients[i];
    sum += w.hull_points[i] * w.coefficients[i];
  }
  CHECK(total == Scalar(1));
  CHECK(sum == w.member);
  CHECK(point_in_hull(std::vector<Point>(w.hull_points.begin(), w.hull_points.end()), w.member));
}

std::vector<Point> random_convex_quad(std::mt19937_64& rng) {
  for (;;) {
    std::vector<Point> s;
    for (int k = 0; k < 4; ++k) s.push_back(Point{oracle::rational(rng, 5, 3), oracle::rational(rng, 5, 3)});
    try {
      if (std::holds_alternative<RadonSplit>(radon_partition(s))) return s;
    } catch (const DomainError&) {
    }
  }
}

}  // namespace

TEST_CASE("normalize_instance examples") {
  const auto i1 = normalize_instance(kCross, Scalar(1), Point{0, 0});
  CHECK(i1.gamma == Scalar(1));
  CHECK(i1.delta == Scalar(1));
  CHECK(i1.alpha == Scalar(0));
  CHECK(i1.beta == Scalar(0));
  CHECK(i1.discriminant == Scalar(0));

  CHECK(normalize_instance(kCross, Scalar(2), Point{0, 0}).discriminant == Scalar(-1));

  const auto i3 = normalize_instance(kCross, Scalar(1), Point{1, 1});
  CHECK(i3.alpha == Scalar(1));
  CHECK(i3.beta == Scalar(1));
  CHECK(i3.discriminant == Scalar(0));

  // Relabelling makes both dot products non-negative.
  const auto i4 = normalize_instance(kCross, Scalar(1), Point{-1, -2});
  CHECK(i4.alpha.sign() >= 0);
  CHECK(i4.beta.sign() >= 0);
  CHECK(i4.swapped_ac);
  CHECK(i4.swapped_bd);
  CHECK((i4.a - i4.crossing).dot(i4.r_centered).sign() >= 0);

  try {
    (void)normalize_instance(std::vector<Point>{{0, 0}, {3, 0}, {0, 3}, {1, 1}}, Scalar(1), Point{0, 0});
    FAIL("expected NotOpposing");
  } catch (const NotOpposing& e) {
    CHECK(e.interior_index() == 3);
  }
}

TEST_CASE("inseparable_witness examples") {
  const auto w1 = inseparable_witness(normalize_instance(kCross, Scalar(1), Point{0, 0}));
  CHECK(w1.branch == 1);
  CHECK(w1.member == kCross[2]);
  check_witness(w1);

  const auto w2 = inseparable_witness(normalize_instance(kCross, Scalar(2), Point{0, 0}));
  CHECK(w2.branch == 2);
  CHECK(w2.member == kCross[1]);
  CHECK(w2.coefficients[0] == Scalar(1, 4));
  CHECK(w2.coefficients[1] == Scalar(1, 4));
  CHECK(w2.coefficients[2] == Scalar(1, 2));
  CHECK(w2.coefficients[3] == Scalar(0));
  check_witness(w2);
}

TEST_CASE("inseparable_witness on random instances exercises both branches") {
  std::mt19937_64 rng(41);
  int branch[3] = {0, 0, 0};
  for (int t = 0; t < 400; ++t) {
    const auto s = random_convex_quad(rng);
    const Scalar lambda(1 + static_cast<long>(rng() % 32), 4);
    const Point r{oracle::rational(rng, 3, 3), oracle::rational(rng, 3, 3)};
    const auto w = inseparable_witness(normalize_instance(s, lambda, r));
    check_witness(w);
    ++branch[w.branch];

    // Translating everything moves the member by the same amount.
    const Point shift{Scalar(7, 3), Scalar(-2)};
    const auto moved_s = scale_translate(s, Scalar(1), shift);
    const Point moved_r = r + shift - shift * lambda;
    const auto moved = inseparable_witness(normalize_instance(moved_s, lambda, moved_r));
    CHECK(moved.member == w.member + shift);
  }
  CHECK(branch[1] > 50);
  CHECK(branch[2] > 50);
}

TEST_CASE("nonshattering_contradiction") {
  const auto c1 = nonshattering_contradiction(kCross, Scalar(1), Point{0, 0}, Scalar(1), Point{0, 0});
  CHECK(c1.kind == ContradictionWitness::Kind::OpposingPairs);
  CHECK(c1.mu == Scalar(1));
  CHECK(c1.v == Point{0, 0});
  CHECK(point_in_hull(c1.hull, c1.member));

  const auto c2 = nonshattering_contradiction(kSquare, Scalar(1), Point{1, 0}, Scalar(3), Point{0, 0});
  CHECK(c2.mu == Scalar(1, 3));
  CHECK(c2.v == Point{1, 0});
  CHECK(point_in_hull(c2.hull, c2.member));

  const std::vector<Point> tri{{0, 0}, {3, 0}, {0, 3}, {1, 1}};
  const auto c3 = nonshattering_contradiction(tri, Scalar(1), Point{0, 0}, Scalar(1), Point{0, 0});
  CHECK(c3.kind == ContradictionWitness::Kind::InteriorPoint);
  CHECK(c3.interior_index == 3);
  CHECK(c3.member == Point{1, 1});
  CHECK(point_in_hull(c3.hull, c3.member));
}

TEST_CASE("member_contains and carved_mask") {
  const ConvexPolygon sq = centred_square();
  const FamilyMember m{Scalar(2), Point{1, 0}};
  CHECK(member_contains(sq, m, Point{3, 2}));
  CHECK_FALSE(member_contains(sq, m, Point{-2, 0}));
  CHECK(carved_mask(sq, m, kCross) == 0b1111);
  CHECK(carved_mask(sq, FamilyMember{Scalar(1, 2), Point{1, 0}}, kCross) == 0b0001);
}

TEST_CASE("attempt_shatter_four finds no shattering") {
  const auto log = attempt_shatter_four(centred_square(), kCross, 1000, 1);
  CHECK(log.shatterings == 0);
  CHECK(log.candidates == 1000);
  // An axis-aligned square around two opposite cross points always reaches a third one.
  CHECK_FALSE(log.carved[log.pair_masks[0]]);
  CHECK_FALSE(log.carved[log.pair_masks[1]]);
  CHECK(log.entries.empty());

  std::mt19937_64 rng(8);
  std::size_t entries = 0;
  for (int t = 0; t < 6; ++t) {
    const auto s = random_convex_quad(rng);
    const auto hex = attempt_shatter_four(hexagon(), s, 1000, 2 + t);
    CHECK(hex.shatterings == 0);
    entries += hex.entries.size();
    for (const FailureEntry& e : hex.entries) {
      CHECK(point_in_hull(e.witness.hull, e.witness.member));
      CHECK(member_contains(hexagon(), e.partner, s[e.forced_index]));
    }
  }

  CHECK(entries > 0);

  const std::vector<Point> tri{{0, 0}, {3, 0}, {0, 3}, {1, 1}};
  const auto interior = attempt_shatter_four(centred_square(), tri, 200, 1);
  CHECK(interior.shatterings == 0);
  REQUIRE(interior.interior.has_value());
  CHECK(interior.interior->interior_index == 3);
}

TEST_CASE("three points are shattered by the square family") {
  const std::vector<Point> three{{0, 0}, {4, 1}, {1, 4}};
  const auto found = search_family_carvings(centred_square(), three, 2000, 1);
  CHECK(found.shattered());
  for (SubsetMask a = 0; a < 8; ++a) {
    REQUIRE(found.carvers[a].has_value());
    CHECK(carved_mask(centred_square(), *found.carvers[a], three) == a);
  }
}

TEST_CASE("search is reproducible for a seed") {
  const auto a = attempt_shatter_four(hexagon(), kSquare, 300, 5);
  const auto b = attempt_shatter_four(hexagon(), kSquare, 300, 5);
  CHECK(a.carved == b.carved);
  CHECK(a.entries.size() == b.entries.size());
}
