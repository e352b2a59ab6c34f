#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vcnorms/construction.hpp"
#include "vcnorms/cube_carving.hpp"
#include "vcnorms/geometry.hpp"
#include "vcnorms/infinite_norm.hpp"
#include "vcnorms/planar_norms.hpp"

namespace vcnorms::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kArtifactVersion = "1.0.0";

// Scalars are written as "p/q" strings and read from such strings or from JSON integers.
json to_json(const Scalar& s);
json to_json(const Point& p);
json to_json(std::span<const Point> pts);
json to_json(const Cube& c);
json to_json(const HalfProduct& h);
json to_json(const ShatterReport& r);
json to_json(const ShatterableSet& s);
json to_json(const MaxShattered& m);
json to_json(const RadonResult& r);
json to_json(const Lemma6Instance& inst);
json to_json(const HullWitness& w);
json to_json(const ContradictionWitness& w);
json to_json(const FamilyMember& m);
json to_json(const DemoReport& r);

/// One JSON object per line: a summary first, then one line per failure entry.
std::vector<json> failure_log_lines(const FailureLog& log);

Scalar scalar_from_json(const json& j);
Point point_from_json(const json& j);
/// Accepts an array of points or an object with a "points" array.
std::vector<Point> points_from_json(const json& j);

/// Parses `text`, turning any JSON syntax error into DomainError.
json parse_json(std::string_view text);

/// Plain-text vertex listing of the stage body, one "v x y z" line per vertex.
std::string body_obj(const StageBody& body);

/// SVG 1.1 drawing of the slices lambda_n P_n listed in `slices` (0-based), with the shattered points.
std::string sections_svg(const DemoReport& r, const std::vector<std::size_t>& slices);

/// Projection onto the first two coordinates of the points and the certificate cubes of `masks`.
std::string construction_svg(const ShatterableSet& s, const std::vector<SubsetMask>& masks);

/// The four points with their opposing segments and, when given, the witness hull and member.
std::string witness_svg(std::span<const Point> s4, const RadonResult& partition,
                        const std::optional<HullWitness>& witness);

std::string sha256_hex(std::string_view bytes);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_digests;
  std::map<std::string, std::string> output_digests;
};

json to_json(const RunManifest& m);

}  // namespace vcnorms::io
