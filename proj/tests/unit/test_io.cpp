#include <doctest.h>

#include "vcnorms/io.hpp"

using namespace vcnorms;
using vcnorms::io::json;

TEST_CASE("sha256") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("scalars and points round trip") {
  const Scalar s(-7, 3);
  CHECK(io::to_json(s) == json("-7/3"));
  CHECK(io::scalar_from_json(io::to_json(s)) == s);
  CHECK(io::scalar_from_json(json(5)) == Scalar(5));
  CHECK_THROWS_AS(io::scalar_from_json(json(1.5)), DomainError);

  const std::vector<Point> pts{{Scalar(1, 2), Scalar(-3)}, {0, 4}};
  const json j = io::to_json(std::span<const Point>(pts));
  CHECK(io::points_from_json(j) == pts);
  CHECK(io::points_from_json(json{{"points", j}}) == pts);
  CHECK_THROWS_AS(io::points_from_json(json::parse(R"([["1","2"],["3"]])")), DomainError);
}

TEST_CASE("parse_json maps syntax errors") {
  CHECK_THROWS_AS(io::parse_json("{not json"), DomainError);
  CHECK(io::parse_json("[1, 2]").size() == 2);
}

TEST_CASE("construction output re-verifies after a round trip") {
  const auto set = build_shatterable_set(3);
  const json j = io::to_json(set);
  CHECK(j["dim"] == 3);
  const auto pts = io::points_from_json(j);
  CHECK(pts == set.points);
  CHECK(is_shattered(pts).shattered());
  CHECK(j["certificates"].size() == 32);
  for (const json& c : j["certificates"]) {
    const auto mask = c["mask"].get<SubsetMask>();
    const Cube cube{io::point_from_json(c["cube"]["lo"]), io::scalar_from_json(c["cube"]["side"])};
    CHECK(cube_carves(pts, mask, cube));
  }
}

TEST_CASE("serialization is deterministic") {
  const auto a = io::to_json(demo_infinite_vc(2)).dump();
  const auto b = io::to_json(demo_infinite_vc(2)).dump();
  CHECK(a == b);
  const auto svg = io::sections_svg(demo_infinite_vc(2), {0, 1, 2});
  CHECK(svg.starts_with("<?xml"));
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("failure log lines") {
  const std::vector<Point> cross{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto sq = convex_hull_2d(std::vector<Point>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const auto log = attempt_shatter_four(sq, cross, 200, 1);
  const auto lines = io::failure_log_lines(log);
  REQUIRE(lines.size() == 1 + log.entries.size());
  CHECK(lines[0]["shatterings"] == 0);
}
