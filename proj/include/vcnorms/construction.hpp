#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vcnorms/cube_carving.hpp"

namespace vcnorms {

/// Which semi-infinite pattern a niceness witness follows.
///
/// Odd dimensions allow two disjuncts: either I_2 is the whole line with I_1 and I_3 left rays,
/// or I_3 is the whole line with I_1 and/or I_2 left rays. The second disjunct is recorded with
/// whether both (strong reading) or only one (weak reading) of I_1, I_2 is a left ray.
enum class WitnessPattern {
  Even,               // I_1 and I_2 are left rays
  OddSecondFull,      // I_2 = R, I_1 and I_3 left rays
  OddThirdFullBoth,   // I_3 = R, I_1 and I_2 left rays
  OddThirdFullEither, // I_3 = R, exactly one of I_1, I_2 a left ray
  None,
};

const char* to_string(WitnessPattern p);

/// Classifies `i` against the pattern required in dimension `dim`.
WitnessPattern classify_witness(const HalfProduct& i, std::size_t dim);

/// A set in R^d (d >= 2) carrying one witness half-product per subset, indexed by SubsetMask.
struct NiceSet {
  std::size_t dim = 0;
  std::vector<Point> points;
  std::vector<HalfProduct> witnesses;
  std::vector<WitnessPattern> patterns;
};

/// A set of floor((3d+1)/2) points with one cube certificate per subset. `sources` holds the
/// half-product each cube was derived from, when there is one.
struct ShatterableSet {
  std::size_t dim = 0;
  std::vector<Point> points;
  ShatterReport report;
  std::vector<std::optional<HalfProduct>> sources;
};

struct Extension {
  ShatterableSet shatterable;
  NiceSet next;
};

enum class LiftVariant { InsertAt2, InsertAt3 };

inline constexpr std::size_t kDefaultMaxConstructionDim = 10;

/// floor((3d+1)/2).
constexpr std::size_t cube_vc_dimension(std::size_t d) { return (3 * d + 1) / 2; }

/// Every violated niceness clause, as readable messages. Empty means nice.
std::vector<std::string> nice_violations(const NiceSet& n);

NiceSet base_nice_r2();

/// (x_1, x_2, ..., x_d) -> (x_1, -x_1, x_2, ..., x_d).
Point lift_f(const Point& p);

/// Inserts a FullLine factor at position 2 or 3 (1-based).
HalfProduct lift_witness(const HalfProduct& i, LiftVariant variant);

Extension extend_even(const NiceSet& n);
Extension extend_odd(const NiceSet& n);

/// The nice set the recursion produces in dimension d >= 2.
NiceSet nice_set(std::size_t d, std::size_t max_dim = kDefaultMaxConstructionDim);

ShatterableSet build_shatterable_set(std::size_t d, std::size_t max_dim = kDefaultMaxConstructionDim);

}  // namespace vcnorms
