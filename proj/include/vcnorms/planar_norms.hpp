#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vcnorms/cube_carving.hpp"
#include "vcnorms/errors.hpp"
#include "vcnorms/geometry.hpp"

namespace vcnorms {

/// The four points have no opposing pairs: one of them lies in the hull of the others.
class NotOpposing : public DomainError {
 public:
  NotOpposing(const std::string& what, std::size_t interior_index)
      : DomainError(what), interior_index_(interior_index) {}
  std::size_t interior_index() const noexcept { return interior_index_; }

 private:
  std::size_t interior_index_;
};

/// Four points in convex position, labelled so that {a, c} and {b, d} are the opposing pairs,
/// together with a homothety x -> lambda x + r.
///
/// After moving the crossing point p to the origin, c = -gamma a, d = -delta b and the shifted
/// translation r' = r + (lambda - 1) p equals alpha a + beta b with alpha, beta >= 0. The labels
/// within each pair are swapped as needed to make alpha and beta non-negative.
struct Lemma6Instance {
  Point a, b, c, d;  // original coordinates
  std::array<std::size_t, 4> index{};  // input positions of a, b, c, d
  Scalar lambda;
  Point r;
  Point crossing;
  Point r_centered;
  Scalar gamma, delta, alpha, beta;
  Scalar discriminant;  // alpha - gamma (beta + lambda - 1)
  bool swapped_ac = false;
  bool swapped_bd = false;
};

/// `member` equals the convex combination of `hull_points` with `coefficients`.
/// hull_points are always {a, c, lambda b + r, lambda d + r}.
struct HullWitness {
  Point member;
  std::array<Point, 4> hull_points;
  std::array<Scalar, 4> coefficients;
  int branch = 0;  // 1 when the discriminant is >= 0, else 2
};

/// A point that any convex set containing `hull` must contain.
struct ContradictionWitness {
  enum class Kind { OpposingPairs, InteriorPoint };

  Kind kind = Kind::OpposingPairs;
  Point member;
  std::vector<Point> hull;
  std::vector<Scalar> coefficients;
  Scalar mu;
  Point v;
  std::size_t interior_index = 0;  // InteriorPoint only
  int branch = 0;                  // OpposingPairs only
};

/// A homothet lambda C + r of the generator.
struct FamilyMember {
  Scalar lambda;
  Point r;
};

struct CandidateRecord {
  std::size_t index = 0;
  FamilyMember member;
  SubsetMask carved = 0;
};

/// One candidate that carved an opposing pair, and why no member of the family can carve the other.
struct FailureEntry {
  std::size_t candidate = 0;
  FamilyMember carver;
  int pair = 1;  // 1 for {a, c}, 2 for {b, d}
  FamilyMember partner;  // contains the other pair
  bool partner_synthesized = false;
  ContradictionWitness witness;
  std::size_t forced_index = 0;  // point of the carved pair that the partner must contain
};

struct FailureLog {
  std::size_t candidates = 0;
  std::vector<bool> carved;  // per SubsetMask
  std::size_t shatterings = 0;
  std::optional<ContradictionWitness> interior;  // set when one point lies in the hull of the rest
  std::array<SubsetMask, 2> pair_masks{};
  std::vector<FailureEntry> entries;
};

/// Masks carved by some searched homothet of `c`, with the first carver per mask.
struct FamilySearch {
  std::size_t candidates = 0;
  std::vector<std::optional<FamilyMember>> carvers;  // per SubsetMask
  std::vector<CandidateRecord> records;

  bool shattered() const;
};

Lemma6Instance normalize_instance(std::span<const Point> s4, const Scalar& lambda, const Point& r);
HullWitness inseparable_witness(const Lemma6Instance& inst);

/// Given homothets lambda C + r and lambda' C + r', returns the point that lambda C + r must
/// contain once it holds {a, c} and lambda' C + r' holds {b, d}, and which belongs to the set
/// lambda C + r has to exclude. For a quadruple with an interior point, returns that point's hull
/// coefficients over the other three.
ContradictionWitness nonshattering_contradiction(std::span<const Point> s4, const Scalar& lambda, const Point& r,
                                                 const Scalar& lambda_prime, const Point& r_prime);

/// True iff x lies in lambda C + r.
bool member_contains(const ConvexPolygon& c, const FamilyMember& m, const Point& x);
SubsetMask carved_mask(const ConvexPolygon& c, const FamilyMember& m, std::span<const Point> s);

/// Seeded randomized search over homothets of `c` (a body containing the origin).
FamilySearch search_family_carvings(const ConvexPolygon& c, std::span<const Point> s, std::size_t budget,
                                    std::uint64_t seed);

FailureLog attempt_shatter_four(const ConvexPolygon& c, std::span<const Point> s4, std::size_t budget,
                                std::uint64_t seed);

}  // namespace vcnorms
