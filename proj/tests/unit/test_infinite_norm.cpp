#include <doctest.h>

#include "vcnorms/errors.hpp"
#include "vcnorms/infinite_norm.hpp"

using namespace vcnorms;

namespace {

ConvexPolygon square(const Scalar& half, const Point& centre = Point{0, 0}) {
  return convex_hull_2d(std::vector<Point>{centre + Point{-half, -half}, centre + Point{half, -half},
                                           centre + Point{half, half}, centre + Point{-half, half}});
}

struct Pipeline {
  std::vector<Point> points;
  NestedSequence ns;
  ConeSequences cs;
  StageBody body;
};

Pipeline pipeline(std::size_t n) {
  Pipeline p;
  p.points = circle_points(n);
  const auto polys = shattering_polygons(p.points, default_margin(p.points));
  Scalar big(0);
  for (const auto& q : polys) {
    for (const Point& v : q.vertices()) big = max(big, max(v[0].abs(), v[1].abs()));
  }
  p.ns = nest_sequence(polys, square(big * Scalar(2)));
  p.cs = cone_sequences(p.ns);
  p.body = build_body(p.ns, p.cs);
  return p;
}

}  // namespace

TEST_CASE("circle_points") {
  CHECK(circle_points(1) == std::vector<Point>{{1, 0}});
  CHECK(circle_points(3) == std::vector<Point>{{1, 0}, {Scalar(3, 5), Scalar(4, 5)}, {Scalar(-3, 5), Scalar(4, 5)}});
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto pts = circle_points(n);
    CHECK(pts.size() == n);
    for (const Point& p : pts) CHECK(p[0] * p[0] + p[1] * p[1] == Scalar(1));
    if (n >= 3) CHECK(convex_hull_2d(pts).size() == n);
  }
}

TEST_CASE("shattering_polygons") {
  const auto pts = circle_points(2);
  const Scalar margin = default_margin(pts);
  CHECK(margin.sign() > 0);
  const auto polys = shattering_polygons(pts, margin);
  REQUIRE(polys.size() == 4);
  for (SubsetMask a = 0; a < 4; ++a) {
    CHECK(polys[a].is_body());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(polygon_contains(polys[a], pts[i]) == bool((a >> i) & 1));
  }
  const auto three = circle_points(3);
  try {
    (void)shattering_polygons(three, Scalar(5));
    FAIL("expected MarginError");
  } catch (const MarginError& e) {
    CHECK(e.mask() != 0);
  }
  CHECK_THROWS_AS(shattering_polygons(three, Scalar(0)), DomainError);
}

TEST_CASE("nest_sequence") {
  const std::vector<ConvexPolygon> qs{square(Scalar(1), Point{5, 3}), square(Scalar(2), Point{-1, 0})};
  const auto ns = nest_sequence(qs, square(Scalar(20)));
  REQUIRE(ns.size() == 3);
  CHECK(ns.polys[0] == square(Scalar(20)));
  CHECK(is_symmetric(ns.polys[0]));
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    for (const Point& v : ns.polys[k + 1].vertices()) CHECK(polygon_contains(ns.polys[k], v));
    CHECK(ns.polys[k + 1] != ns.polys[k]);
  }
  for (std::size_t k = 1; k < ns.size(); ++k) {
    const Provenance& pv = ns.provenance[k];
    CHECK(scale_translate(ns.polys[k], Scalar(1) / pv.lambda, pv.shift) == qs[k - 1]);
  }
  for (std::size_t m = 0; m < ns.size(); ++m) {
    for (std::size_t n = 0; n < ns.size(); ++n) {
      CHECK(ns.gammas[m][n].sign() > 0);
      if (m == n) CHECK(ns.gammas[m][n] == Scalar(1));
    }
  }
  const std::vector<ConvexPolygon> flat{convex_hull_2d(std::vector<Point>{{0, 0}, {1, 1}})};
  CHECK_THROWS_AS(nest_sequence(flat, square(Scalar(4))), DomainError);
}

TEST_CASE("cone_sequences") {
  const auto p = pipeline(2);
  const auto& cs = p.cs;
  CHECK(cs.alphas[0] == Scalar(1));
  CHECK(cs.betas[0] == Scalar(0));
  CHECK(cs.lambdas[0] == Scalar(1));
  CHECK(cs.betas[1] == Scalar(1, 2));
  CHECK(cs.lambdas[1] == Scalar(1, 2));
  for (std::size_t k = 0; k < cs.betas.size(); ++k) {
    CHECK(cs.betas[k] < cs.alphas[k]);
    if (k > 0) {
      CHECK(cs.betas[k - 1] < cs.betas[k]);
      CHECK(cs.alphas[k] < cs.alphas[k - 1]);
    }
  }
}

TEST_CASE("build_body") {
  const auto p = pipeline(2);
  CHECK(p.body.stage == 5);
  CHECK(p.body.is_body());
  CHECK(p.body.symmetric());
  for (const Point& v : p.body.vertices3) {
    CHECK(std::binary_search(p.body.vertices3.begin(), p.body.vertices3.end(), -v));
  }

  NestedSequence one;
  one.polys = {p.ns.polys[0]};
  one.provenance = {p.ns.provenance[0]};
  one.gammas = {{Scalar(1)}};
  ConeSequences first{{Scalar(1)}, {Scalar(0)}, {Scalar(1)}};
  const StageBody flat = build_body(one, first);
  CHECK_FALSE(flat.is_body());
  CHECK(flat.vertices3.size() == p.ns.polys[0].size());

  NestedSequence two = one;
  two.polys.push_back(p.ns.polys[1]);
  two.provenance.push_back(p.ns.provenance[1]);
  two.gammas = {{Scalar(1), p.ns.gammas[0][1]}, {p.ns.gammas[1][0], Scalar(1)}};
  ConeSequences second{{p.cs.alphas[0], p.cs.alphas[1]}, {p.cs.betas[0], p.cs.betas[1]},
                       {p.cs.lambdas[0], p.cs.lambdas[1]}};
  CHECK(build_body(two, second).vertices3.size() == 2 * p.ns.polys[1].size() + p.ns.polys[0].size());
}

TEST_CASE("cross sections hold and a corrupted body is caught") {
  const auto p = pipeline(2);
  for (std::size_t n = 0; n < p.ns.size(); ++n) {
    const auto r = cross_section_check(p.body, p.ns, p.cs, n);
    CHECK(r.ok());
    CHECK(r.height == p.cs.betas[n]);
    CHECK(r.vertices_checked > 0);
  }

  StageBody bad = p.body;
  const Point target = embed(p.ns.polys[2].vertices()[0] * p.cs.lambdas[2], p.cs.betas[2]);
  auto it = std::find(bad.vertices3.begin(), bad.vertices3.end(), target);
  REQUIRE(it != bad.vertices3.end());
  *it = embed(p.ns.polys[2].vertices()[0] * (p.cs.lambdas[2] * Scalar(40)), p.cs.betas[2]);
  bool caught = false;
  for (std::size_t n = 0; n < p.ns.size(); ++n) caught = caught || !cross_section_check(bad, p.ns, p.cs, n).ok();
  CHECK(caught);
}

TEST_CASE("shatter_with_norm certificates") {
  const auto p = pipeline(3);
  for (SubsetMask a = 0; a < 8; ++a) {
    const auto cert = shatter_with_norm(p.body, p.ns, p.cs, p.points, a, a + 1);
    CHECK(cert.verified);
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      const bool in = point_in_hull(cert.g_vertices, embed(p.points[i], Scalar(0)));
      CHECK(in == bool((a >> i) & 1));
      CHECK(cert.members[i] == in);
    }
  }
  CHECK_THROWS_AS(shatter_with_norm(p.body, p.ns, p.cs, p.points, 0b001, 3), CarveMismatch);
}

TEST_CASE("convexity witness") {
  const auto p = pipeline(2);
  const auto r = convexity_witness(p.body, p.ns);
  CHECK(r.pairs_checked > 0);
  CHECK(r.violations.empty());
  CHECK(convexity_witness(p.body, p.ns, 10).pairs_checked <= 10);
}

TEST_CASE("demo_infinite_vc") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = demo_infinite_vc(n);
    CHECK(r.ok());
    CHECK(r.stage == (std::size_t{1} << n) + 1);
    CHECK(r.certificates.size() == (std::size_t{1} << n));
    CHECK(r.p1_contains_sources);
    for (const auto& c : r.certificates) CHECK(c.verified);
  }
  CHECK_THROWS_AS(demo_infinite_vc(64), RefusalError);
  CHECK_THROWS_AS(demo_infinite_vc(0), DomainError);
}
