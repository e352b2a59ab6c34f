#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcnorms/cube_carving.hpp"
#include "vcnorms/errors.hpp"
#include "vcnorms/geometry.hpp"

namespace vcnorms {

/// The inflated polygon for `mask` fails to carve it.
class MarginError : public DomainError {
 public:
  MarginError(const std::string& what, SubsetMask mask) : DomainError(what), mask_(mask) {}
  SubsetMask mask() const noexcept { return mask_; }

 private:
  SubsetMask mask_;
};

/// Maps P back to its source polygon: Q = (1 / lambda) P + shift.
struct Provenance {
  Scalar lambda;
  Point shift;
};

/// P_1 ⊇ P_2 ⊇ ... ⊇ P_K, each containing the origin in its interior. P_1 is symmetric and
/// P_{k+2} comes from source polygon k. gammas[m][n] is the largest g with g P_m ⊆ P_n (diagonal 1).
struct NestedSequence {
  std::vector<ConvexPolygon> polys;
  std::vector<Provenance> provenance;
  std::vector<std::vector<Scalar>> gammas;

  std::size_t size() const { return polys.size(); }
};

struct ConeSequences {
  std::vector<Scalar> alphas;
  std::vector<Scalar> betas;
  std::vector<Scalar> lambdas;
};

/// Vertices of F_K = D_K ∪ (-D_K) in R^3, w = (0, 0, 1). Sorted, duplicate-free, closed under
/// negation. The D_K half is the vertices with non-negative height.
struct StageBody {
  std::vector<Point> vertices3;
  std::size_t stage = 0;

  static Point w() { return Point{0, 0, 1}; }
  std::vector<Point> d_half() const;
  /// A single slice is flat.
  bool is_body() const { return stage >= 2; }
  bool symmetric() const;
};

struct CheckReport {
  std::size_t index = 0;  // 0-based slice index n
  Scalar height;
  std::size_t vertices_checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// G = mu_prime (F_K - beta_m w) + embed(r, 0) carving `mask` from the embedded planar set.
struct NormCarveCertificate {
  SubsetMask mask = 0;
  std::size_t slice = 0;  // 0-based index m of the slice whose scaled copy carves `mask`
  Scalar mu;              // source polygon = mu P_m + r
  Point r;
  Scalar mu_prime;
  Scalar offset;  // beta_m
  std::vector<Point> g_vertices;
  std::vector<bool> members;  // per point, by point_in_hull against g_vertices
  bool verified = false;
};

struct ConvexityReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
};

struct DemoReport {
  std::size_t n = 0;
  std::size_t stage = 0;
  Scalar margin;
  std::vector<Point> points;
  NestedSequence nested;
  ConeSequences sequences;
  StageBody body;
  bool p1_contains_sources = false;
  std::vector<CheckReport> checks;
  ConvexityReport convexity;
  std::vector<NormCarveCertificate> certificates;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline constexpr std::size_t kDefaultMaxDemoPoints = 5;

/// n distinct rational points on the unit circle, from t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))
/// with t = 0, 1/2, 2, -1/2, -2, 1, -1, 1/4, 4, -1/4, -4, 1/8, ...
std::vector<Point> circle_points(std::size_t n);

/// A quarter of the smallest l-infinity distance from a point of `s` to the hull of a non-empty
/// subset avoiding it; 1/4 when no such pair exists.
Scalar default_margin(std::span<const Point> s);

/// One body per subset mask: conv(A) plus the square [-margin, margin]^2, or a far square for A = ∅.
std::vector<ConvexPolygon> shattering_polygons(std::span<const Point> s, const Scalar& margin);

/// True iff every vertex of `p` negated is again a vertex.
bool is_symmetric(const ConvexPolygon& p);

NestedSequence nest_sequence(std::span<const ConvexPolygon> qs, const ConvexPolygon& p1);

ConeSequences cone_sequences(const NestedSequence& ns);

StageBody build_body(const NestedSequence& ns, const ConeSequences& cs);

CheckReport cross_section_check(const StageBody& body, const NestedSequence& ns, const ConeSequences& cs,
                                std::size_t n);

/// Certificate for the subset `a` of `s`, carved in the plane by source polygon m - 1 (0-based
/// slice m). Throws CarveMismatch when that source polygon does not carve `a`.
NormCarveCertificate shatter_with_norm(const StageBody& body, const NestedSequence& ns, const ConeSequences& cs,
                                       std::span<const Point> s, SubsetMask a, std::size_t m);

/// Checks the split point of up to `max_pairs` vertex pairs across the two halves of the body.
ConvexityReport convexity_witness(const StageBody& body, const NestedSequence& ns,
                                  std::size_t max_pairs = 4096);

DemoReport demo_infinite_vc(std::size_t n, std::optional<Scalar> stage_margin = std::nullopt,
                            std::size_t max_n = kDefaultMaxDemoPoints);

}  // namespace vcnorms
