#include "vcnorms/planar_norms.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

namespace vcnorms {

namespace {

Scalar cross(const Point& u, const Point& v) { return u[0] * v[1] - u[1] * v[0]; }

// Positive k with v = k * u, for nonzero collinear u, v.
Scalar ratio(const Point& v, const Point& u) {
  const std::size_t axis = u[0].is_zero() ? 1 : 0;
  const Scalar k = v[axis] / u[axis];
  if (u * k != v) throw InvariantError("normalize_instance: opposing pair is not collinear with the crossing");
  return k;
}

Point combination(std::span<const Point> pts, std::span<const Scalar> w) {
  Point sum = Point::zero(pts.front().dim());
  for (std::size_t i = 0; i < pts.size(); ++i) sum += pts[i] * w[i];
  return sum;
}

void check_convex_combination(const Point& member, std::span<const Point> pts, std::span<const Scalar> w,
                              const char* op) {
  Scalar total;
  for (const Scalar& x : w) {
    if (x.sign() < 0) throw InvariantError(std::string(op) + ": negative coefficient");
    total += x;
  }
  if (total != Scalar(1)) throw InvariantError(std::string(op) + ": coefficients do not sum to one");
  if (combination(pts, w) != member) throw InvariantError(std::string(op) + ": combination identity fails");
}

Point vertex_centroid(const ConvexPolygon& c) {
  Point sum = Point::zero(2);
  for (const Point& v : c.vertices()) sum += v;
  return sum * (Scalar(1) / Scalar(c.size()));
}

void require_generator(const ConvexPolygon& c, const char* op) {
  if (!c.is_body()) throw DomainError(std::string(op) + ": generator has empty interior");
  if (!polygon_contains(c, Point::zero(2))) throw DomainError(std::string(op) + ": generator misses the origin");
}

Scalar pow2(int k) {
  Scalar p(1);
  for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= Scalar(2);
  return k < 0 ? Scalar(1) / p : p;
}

// rng() % n keeps the candidate stream identical across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Homothet of `c` around `pair` midpoint, doubled until it holds both points.
FamilyMember synthesize_container(const ConvexPolygon& c, const Point& p, const Point& q) {
  const Point mid = (p + q) * Scalar(1, 2);
  const Point centre = vertex_centroid(c);
  Scalar lambda(1);
  for (int step = 0; step < 256; ++step) {
    const FamilyMember m{lambda, mid - centre * lambda};
    if (member_contains(c, m, p) && member_contains(c, m, q)) return m;
    lambda *= Scalar(2);
  }
  throw InvariantError("attempt_shatter_four: could not grow a homothet around a pair");
}

}  // namespace

bool FamilySearch::shattered() const {
  return std::all_of(carvers.begin(), carvers.end(), [](const auto& m) { return m.has_value(); });
}

Lemma6Instance normalize_instance(std::span<const Point> s4, const Scalar& lambda, const Point& r) {
  if (lambda.sign() <= 0) throw DomainError("normalize_instance: lambda must be positive");
  if (r.dim() != 2) throw DomainError("normalize_instance: translation must be planar");
  const RadonResult radon = radon_partition(s4);
  if (const auto* ip = std::get_if<InteriorPoint>(&radon)) {
    throw NotOpposing("normalize_instance: point " + std::to_string(ip->index) + " lies in the hull of the others",
                      ip->index);
  }
  const auto& split = std::get<RadonSplit>(radon);

  Lemma6Instance inst;
  inst.a = split.pair1[0];
  inst.c = split.pair1[1];
  inst.b = split.pair2[0];
  inst.d = split.pair2[1];
  inst.index = {split.pair1_index[0], split.pair2_index[0], split.pair1_index[1], split.pair2_index[1]};
  inst.lambda = lambda;
  inst.r = r;
  inst.crossing = split.crossing;
  const Point& p = inst.crossing;
  for (const Point* x : {&inst.a, &inst.b, &inst.c, &inst.d}) {
    if (*x == p) throw DomainError("normalize_instance: a point coincides with the crossing");
  }
  inst.r_centered = r + p * (lambda - Scalar(1));

  Point a0 = inst.a - p;
  Point b0 = inst.b - p;
  inst.gamma = ratio(-(inst.c - p), a0);
  inst.delta = ratio(-(inst.d - p), b0);
  const Scalar det = cross(a0, b0);
  inst.alpha = cross(inst.r_centered, b0) / det;
  inst.beta = cross(a0, inst.r_centered) / det;

  if (inst.alpha.sign() < 0) {
    std::swap(inst.a, inst.c);
    std::swap(inst.index[0], inst.index[2]);
    inst.alpha = -inst.alpha / inst.gamma;
    inst.gamma = Scalar(1) / inst.gamma;
    inst.swapped_ac = true;
  }
  if (inst.beta.sign() < 0) {
    std::swap(inst.b, inst.d);
    std::swap(inst.index[1], inst.index[3]);
    inst.beta = -inst.beta / inst.delta;
    inst.delta = Scalar(1) / inst.delta;
    inst.swapped_bd = true;
  }
  inst.discriminant = inst.alpha - inst.gamma * (inst.beta + lambda - Scalar(1));

  a0 = inst.a - p;
  b0 = inst.b - p;
  if (a0 * inst.alpha + b0 * inst.beta != inst.r_centered) {
    throw InvariantError("normalize_instance: basis decomposition of the translation fails");
  }
  return inst;
}

HullWitness inseparable_witness(const Lemma6Instance& inst) {
  const Scalar& lambda = inst.lambda;
  const Scalar one(1);
  HullWitness w;
  w.hull_points = {inst.a, inst.c, inst.b * lambda + inst.r, inst.d * lambda + inst.r};
  if (inst.discriminant.sign() >= 0) {
    w.branch = 1;
    const Scalar s = lambda * inst.gamma / (inst.gamma + inst.alpha);
    const Scalar u = inst.discriminant / ((one + inst.delta) * (inst.gamma + inst.alpha));
    w.coefficients = {Scalar(), s, one - s - u, u};
    w.member = inst.c * lambda + inst.r;
  } else {
    w.branch = 2;
    const Scalar s = one / (inst.beta + lambda);
    const Scalar u = (inst.alpha + inst.beta + lambda - one) / ((inst.beta + lambda) * (one + inst.gamma));
    w.coefficients = {one - s - u, u, s, Scalar()};
    w.member = inst.b;
  }
  check_convex_combination(w.member, w.hull_points, w.coefficients, "inseparable_witness");
  return w;
}

ContradictionWitness nonshattering_contradiction(std::span<const Point> s4, const Scalar& lambda, const Point& r,
                                                 const Scalar& lambda_prime, const Point& r_prime) {
  if (lambda.sign() <= 0 || lambda_prime.sign() <= 0) {
    throw DomainError("nonshattering_contradiction: scales must be positive");
  }
  ContradictionWitness out;
  out.mu = lambda / lambda_prime;
  out.v = r - r_prime * out.mu;

  const RadonResult radon = radon_partition(s4);
  if (const auto* ip = std::get_if<InteriorPoint>(&radon)) {
    out.kind = ContradictionWitness::Kind::InteriorPoint;
    out.interior_index = ip->index;
    out.member = s4[ip->index];
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != ip->index) out.hull.push_back(s4[i]);
    }
    auto w = convex_coefficients(out.hull, out.member);
    if (!w) throw InvariantError("nonshattering_contradiction: interior point has no hull coefficients");
    out.coefficients = std::move(*w);
    check_convex_combination(out.member, out.hull, out.coefficients, "nonshattering_contradiction");
    return out;
  }

  const HullWitness hw = inseparable_witness(normalize_instance(s4, out.mu, out.v));
  out.kind = ContradictionWitness::Kind::OpposingPairs;
  out.member = hw.member;
  out.hull.assign(hw.hull_points.begin(), hw.hull_points.end());
  out.coefficients.assign(hw.coefficients.begin(), hw.coefficients.end());
  out.branch = hw.branch;
  return out;
}

bool member_contains(const ConvexPolygon& c, const FamilyMember& m, const Point& x) {
  return polygon_contains(c, (x - m.r) * (Scalar(1) / m.lambda));
}

SubsetMask carved_mask(const ConvexPolygon& c, const FamilyMember& m, std::span<const Point> s) {
  SubsetMask mask = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (member_contains(c, m, s[i])) mask |= SubsetMask{1} << i;
  }
  return mask;
}

FamilySearch search_family_carvings(const ConvexPolygon& c, std::span<const Point> s, std::size_t budget,
                                    std::uint64_t seed) {
  require_generator(c, "search_family_carvings");
  if (s.empty() || s.size() > 8) throw DomainError("search_family_carvings: expected 1 to 8 points");
  const SubsetMask count = SubsetMask{1} << s.size();

  const Box box = rect_hull(s);
  Scalar extent = linf_diam(s);
  if (extent.is_zero()) extent = Scalar(1);
  const Point centre = (box.lo + box.hi) * Scalar(1, 2);
  const Scalar base = extent / linf_diam(c.vertices());
  const Point anchor = vertex_centroid(c);

  FamilySearch out;
  out.carvers.assign(count, std::nullopt);
  std::vector<std::optional<std::size_t>> near_miss(count);  // record index closest to each mask
  std::mt19937_64 rng(seed);

  for (std::size_t k = 0; k < budget; ++k) {
    FamilyMember m;
    std::vector<SubsetMask> open;
    for (SubsetMask t = 0; t < count; ++t) {
      if (!out.carvers[t] && near_miss[t]) open.push_back(t);
    }
    if (k >= budget / 4 && k % 2 == 1 && !open.empty()) {
      // Refine around the closest miss of a still-uncarved subset.
      const FamilyMember& seed_member = out.records[*near_miss[open[(k / 2) % open.size()]]].member;
      m.lambda = seed_member.lambda * Scalar(64 + draw(rng, -8, 8), 64);
      m.r = seed_member.r;
      for (std::size_t j = 0; j < 2; ++j) m.r[j] += extent * Scalar(draw(rng, -16, 16), 256);
    } else {
      m.lambda = base * pow2(static_cast<int>(draw(rng, -6, 6))) * Scalar(8 + draw(rng, 0, 7), 8);
      Point body = centre;
      for (std::size_t j = 0; j < 2; ++j) body[j] += extent * Scalar(draw(rng, -32, 32), 32);
      m.r = body - anchor * m.lambda;
    }
    const SubsetMask carved = carved_mask(c, m, s);
    out.records.push_back({k, m, carved});
    if (!out.carvers[carved]) out.carvers[carved] = m;
    for (SubsetMask t = 0; t < count; ++t) {
      if (out.carvers[t]) continue;
      const auto miss = std::popcount(carved ^ t);
      if (!near_miss[t] || miss < std::popcount(out.records[*near_miss[t]].carved ^ t)) near_miss[t] = k;
    }
  }
  out.candidates = budget;
  return out;
}

FailureLog attempt_shatter_four(const ConvexPolygon& c, std::span<const Point> s4, std::size_t budget,
                                std::uint64_t seed) {
  require_generator(c, "attempt_shatter_four");
  if (budget == 0) throw DomainError("attempt_shatter_four: budget must be positive");
  const RadonResult radon = radon_partition(s4);
  const FamilySearch search = search_family_carvings(c, s4, budget, seed);

  FailureLog log;
  log.candidates = search.candidates;
  log.carved.resize(search.carvers.size());
  for (std::size_t m = 0; m < search.carvers.size(); ++m) log.carved[m] = search.carvers[m].has_value();
  log.shatterings = search.shattered() ? 1 : 0;

  if (const auto* ip = std::get_if<InteriorPoint>(&radon)) {
    log.interior = nonshattering_contradiction(s4, Scalar(1), Point::zero(2), Scalar(1), Point::zero(2));
    const SubsetMask rest = SubsetMask{0b1111} & ~(SubsetMask{1} << ip->index);
    if (log.carved[rest]) throw InvariantError("attempt_shatter_four: a convex set separated an interior point");
    return log;
  }

  const auto& split = std::get<RadonSplit>(radon);
  log.pair_masks = {(SubsetMask{1} << split.pair1_index[0]) | (SubsetMask{1} << split.pair1_index[1]),
                    (SubsetMask{1} << split.pair2_index[0]) | (SubsetMask{1} << split.pair2_index[1])};
  if (log.carved[log.pair_masks[0]] && log.carved[log.pair_masks[1]]) {
    throw InvariantError("attempt_shatter_four: both opposing pairs were carved");
  }

  for (const CandidateRecord& rec : search.records) {
    const int pair = rec.carved == log.pair_masks[0] ? 1 : (rec.carved == log.pair_masks[1] ? 2 : 0);
    if (pair == 0) continue;
    const SubsetMask other = log.pair_masks[pair == 1 ? 1 : 0];
    const auto& other_index = pair == 1 ? split.pair2_index : split.pair1_index;

    FailureEntry e;
    e.candidate = rec.index;
    e.carver = rec.member;
    e.pair = pair;
    const auto partner = std::find_if(search.records.begin(), search.records.end(),
                                      [&](const CandidateRecord& x) { return (x.carved & other) == other; });
    if (partner != search.records.end()) {
      e.partner = partner->member;
    } else {
      e.partner = synthesize_container(c, s4[other_index[0]], s4[other_index[1]]);
      e.partner_synthesized = true;
    }

    // The family member holding {a, c} goes first so the witness lives in its hull.
    const FamilyMember& first = pair == 1 ? e.carver : e.partner;
    const FamilyMember& second = pair == 1 ? e.partner : e.carver;
    e.witness = nonshattering_contradiction(s4, first.lambda, first.r, second.lambda, second.r);

    const auto& carved_index = pair == 1 ? split.pair1_index : split.pair2_index;
    bool found = false;
    for (std::size_t idx : carved_index) {
      const Point image = pair == 1 ? s4[idx] * e.witness.mu + e.witness.v : s4[idx];
      if (image == e.witness.member) {
        e.forced_index = idx;
        found = true;
      }
    }
    if (!found) throw InvariantError("attempt_shatter_four: witness does not force a carved-pair point");
    if (!member_contains(c, e.partner, s4[e.forced_index])) {
      throw InvariantError("attempt_shatter_four: partner avoids the forced point");
    }
    log.entries.push_back(std::move(e));
  }
  return log;
}

}  // namespace vcnorms
