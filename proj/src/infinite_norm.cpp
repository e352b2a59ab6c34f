#include "vcnorms/infinite_norm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace vcnorms {

namespace {

std::string str(std::size_t i) { return std::to_string(i); }

bool strictly_inside(const ConvexPolygon& c, const Point& p) {
  const auto v = c.vertices();
  if (!c.is_body()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient2d(v[i], v[(i + 1) % v.size()], p).sign() <= 0) return false;
  }
  return true;
}

Point vertex_centroid(const ConvexPolygon& c) {
  Point sum = Point::zero(2);
  for (const Point& v : c.vertices()) sum += v;
  return sum * (Scalar(1) / Scalar(c.size()));
}

std::vector<Point> square_around(const Point& centre, const Scalar& h) {
  return {centre + Point{-h, -h}, centre + Point{h, -h}, centre + Point{h, h}, centre + Point{-h, h}};
}

Scalar linf_norm(const Point& p) {
  Scalar m;
  for (const Scalar& x : p.coords()) m = max(m, x.abs());
  return m;
}

// min over t in [0, 1] of |x - (p + t (q - p))|_inf; the minimum of the max of two absolute
// linear functions sits at an endpoint or where the two magnitudes cross.
Scalar linf_distance_to_segment(const Point& x, const Point& p, const Point& q) {
  const Point d0 = p - x;
  const Point e = q - p;
  std::vector<Scalar> ts{Scalar(0), Scalar(1)};
  for (const Scalar& sign : {Scalar(1), Scalar(-1)}) {
    // d0[0] + t e[0] = sign (d0[1] + t e[1])
    const Scalar den = e[0] - sign * e[1];
    if (den.is_zero()) continue;
    const Scalar t = (sign * d0[1] - d0[0]) / den;
    if (t.sign() >= 0 && t <= Scalar(1)) ts.push_back(t);
  }
  std::optional<Scalar> best;
  for (const Scalar& t : ts) {
    const Scalar dist = linf_norm(d0 + e * t);
    if (!best || dist < *best) best = dist;
  }
  return *best;
}

std::vector<Point> planar_vertices(const ConvexPolygon& p, const Scalar& lambda) {
  std::vector<Point> out;
  for (const Point& v : p.vertices()) out.push_back(v * lambda);
  return out;
}

bool slice_contains(std::span<const Point> slice_vertices, const Point& planar) {
  return polygon_contains(convex_hull_2d(slice_vertices), planar);
}

Point planar_part(const Point& p3) { return Point{p3[0], p3[1]}; }

void require_consistent(const NestedSequence& ns, const ConeSequences& cs, const char* op) {
  const std::size_t k = ns.size();
  if (k == 0 || cs.alphas.size() != k || cs.betas.size() != k || cs.lambdas.size() != k) {
    throw DomainError(std::string(op) + ": nested sequence and cone sequences differ in length");
  }
}

}  // namespace

std::vector<Point> circle_points(std::size_t n) {
  if (n == 0) throw DomainError("circle_points: n must be at least 1");
  std::vector<Scalar> ts{Scalar(0), Scalar(1, 2), Scalar(2), Scalar(-1, 2), Scalar(-2), Scalar(1), Scalar(-1)};
  for (long p = 4; ts.size() < n; p *= 2) {
    ts.insert(ts.end(), {Scalar(1, p), Scalar(p), Scalar(-1, p), Scalar(-p)});
  }
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar& t = ts[i];
    const Scalar den = Scalar(1) + t * t;
    out.push_back(Point{(Scalar(1) - t * t) / den, Scalar(2) * t / den});
  }
  return out;
}

Scalar default_margin(std::span<const Point> s) {
  if (s.size() > kMaxGroundSet) throw RefusalError("default_margin: too many points");
  std::optional<Scalar> gap;
  const SubsetMask count = SubsetMask{1} << s.size();
  for (SubsetMask a = 1; a < count; ++a) {
    const std::vector<Point> members = select(s, a);
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (a >> x & 1) continue;
      std::optional<Scalar> d;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i; j < members.size(); ++j) {
          const Scalar dij = linf_distance_to_segment(s[x], members[i], members[j]);
          if (!d || dij < *d) d = dij;
        }
      }
      if (!gap || *d < *gap) gap = *d;
    }
  }
  if (!gap) return Scalar(1, 4);
  if (gap->is_zero()) throw DomainError("default_margin: a point lies in the hull of others");
  return *gap / Scalar(4);
}

std::vector<ConvexPolygon> shattering_polygons(std::span<const Point> s, const Scalar& margin) {
  if (s.empty()) throw DomainError("shattering_polygons: empty point set");
  if (s.size() > kMaxGroundSet) throw RefusalError("shattering_polygons: too many points");
  if (margin.sign() <= 0) throw DomainError("shattering_polygons: margin must be positive");
  for (const Point& p : s) {
    if (p.dim() != 2) throw DomainError("shattering_polygons: points must be planar");
  }
  if (convex_hull_2d(s).size() != s.size()) throw DomainError("shattering_polygons: points not in convex position");

  const Box box = rect_hull(s);
  const SubsetMask count = SubsetMask{1} << s.size();
  std::vector<ConvexPolygon> out;
  out.reserve(count);
  for (SubsetMask a = 0; a < count; ++a) {
    std::vector<Point> corners;
    if (a == 0) {
      corners = square_around(box.hi + Point{Scalar(1) + margin, Scalar(1) + margin}, margin);
    } else {
      for (const Point& p : select(s, a)) {
        for (Point& c : square_around(p, margin)) corners.push_back(std::move(c));
      }
    }
    ConvexPolygon poly = convex_hull_2d(corners);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (polygon_contains(poly, s[i]) != static_cast<bool>(a >> i & 1)) {
        throw MarginError("shattering_polygons: margin too large for subset " + std::to_string(a), a);
      }
    }
    out.push_back(std::move(poly));
  }
  return out;
}

bool is_symmetric(const ConvexPolygon& p) {
  const auto v = p.vertices();
  const std::set<Point> set(v.begin(), v.end());
  return std::all_of(v.begin(), v.end(), [&](const Point& x) { return set.contains(-x); });
}

NestedSequence nest_sequence(std::span<const ConvexPolygon> qs, const ConvexPolygon& p1) {
  const Point origin = Point::zero(2);
  if (!p1.is_body()) throw DomainError("nest_sequence: p1 has empty interior");
  if (!is_symmetric(p1)) throw DomainError("nest_sequence: p1 is not symmetric about the origin");
  if (!strictly_inside(p1, origin)) throw DomainError("nest_sequence: origin not interior to p1");

  NestedSequence ns;
  ns.polys.push_back(p1);
  ns.provenance.push_back({Scalar(1), origin});
  const ConvexPolygon unit_box = convex_hull_2d(square_around(origin, Scalar(1)));

  for (std::size_t k = 0; k < qs.size(); ++k) {
    const ConvexPolygon& q = qs[k];
    if (!q.is_body()) throw DomainError("nest_sequence: source polygon " + str(k) + " has empty interior");
    const Point u = vertex_centroid(q);
    Scalar radius;
    for (const Point& v : q.vertices()) radius = max(radius, linf_norm(v - u));
    // Twice the l-infinity radius bounds the Euclidean one and keeps P_{k+1} strictly inside P_k.
    radius *= Scalar(2);
    const Scalar eps = max_inscribe_scale(unit_box, ns.polys.back());
    const Scalar lambda = eps / radius;
    ConvexPolygon next = scale_translate(q, lambda, -u * lambda);

    const ConvexPolygon back = scale_translate(next, Scalar(1) / lambda, u);
    if (back != q) throw InvariantError("nest_sequence: provenance does not reproduce source " + str(k));
    for (const Point& v : next.vertices()) {
      if (!polygon_contains(ns.polys.back(), v)) throw InvariantError("nest_sequence: nesting fails at " + str(k));
    }
    if (!strictly_inside(next, origin)) throw InvariantError("nest_sequence: origin not interior at " + str(k));
    ns.polys.push_back(std::move(next));
    ns.provenance.push_back({lambda, u});
  }

  const std::size_t n = ns.size();
  ns.gammas.assign(n, std::vector<Scalar>(n, Scalar(1)));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m == j) continue;
      ns.gammas[m][j] = max_inscribe_scale(ns.polys[m], ns.polys[j]);
      if (ns.gammas[m][j].sign() <= 0) throw InvariantError("nest_sequence: non-positive gamma");
    }
  }
  return ns;
}

ConeSequences cone_sequences(const NestedSequence& ns) {
  const std::size_t k = ns.size();
  if (k == 0) throw DomainError("cone_sequences: empty nested sequence");
  if (ns.gammas.size() != k) throw DomainError("cone_sequences: gamma matrix has the wrong size");

  ConeSequences cs;
  cs.alphas.push_back(Scalar(1));
  cs.betas.push_back(Scalar(0));
  cs.lambdas.push_back(Scalar(1));
  for (std::size_t next = 1; next < k; ++next) {
    const std::size_t last = next - 1;
    const Scalar beta = midpoint(cs.alphas[last], cs.betas[last]);

    std::optional<Scalar> lambda;
    for (std::size_t n = 0; n < next; ++n) {
      const Scalar cand = cs.lambdas[n] * (cs.alphas[n] - beta) / (cs.alphas[n] - cs.betas[n]);
      if (!lambda || cand < *lambda) lambda = cand;
    }

    // x = alpha - beta must satisfy lambda_n / gamma_n <= lambda (1 + (beta - beta_n) / x).
    Scalar x_max = cs.alphas[last] - beta;
    for (std::size_t n = 0; n < next; ++n) {
      const Scalar c = cs.lambdas[n] / ns.gammas[n][next];
      if (c <= *lambda) continue;
      x_max = min(x_max, *lambda * (beta - cs.betas[n]) / (c - *lambda));
    }
    const Scalar alpha = beta + x_max / Scalar(2);

    const std::vector<Point> fresh = planar_vertices(ns.polys[next], *lambda);
    for (std::size_t n = 0; n < next; ++n) {
      const std::vector<Point> old = planar_vertices(ns.polys[n], cs.lambdas[n]);
      const auto into_fresh = cone_slice(fresh, beta, alpha, cs.betas[n]);
      for (const Point& v : old) {
        if (!slice_contains(into_fresh, v)) {
          throw InvariantError("cone_sequences: slice " + str(n) + " escapes the cone over slice " + str(next));
        }
      }
      const auto into_old = cone_slice(old, cs.betas[n], cs.alphas[n], beta);
      for (const Point& v : fresh) {
        if (!slice_contains(into_old, v)) {
          throw InvariantError("cone_sequences: slice " + str(next) + " escapes the cone over slice " + str(n));
        }
      }
    }
    if (!(cs.betas[last] < beta && beta < alpha && alpha < cs.alphas[last])) {
      throw InvariantError("cone_sequences: monotonicity fails at " + str(next));
    }
    cs.alphas.push_back(alpha);
    cs.betas.push_back(beta);
    cs.lambdas.push_back(*lambda);
  }
  return cs;
}

std::vector<Point> StageBody::d_half() const {
  std::vector<Point> out;
  for (const Point& p : vertices3) {
    if (p[2].sign() >= 0) out.push_back(p);
  }
  return out;
}

bool StageBody::symmetric() const {
  return std::all_of(vertices3.begin(), vertices3.end(),
                     [&](const Point& p) { return std::binary_search(vertices3.begin(), vertices3.end(), -p); });
}

StageBody build_body(const NestedSequence& ns, const ConeSequences& cs) {
  require_consistent(ns, cs, "build_body");
  std::set<Point> verts;
  for (std::size_t n = 0; n < ns.size(); ++n) {
    for (const Point& v : ns.polys[n].vertices()) {
      const Point p = embed(v * cs.lambdas[n], cs.betas[n]);
      verts.insert(p);
      verts.insert(-p);
    }
  }
  StageBody body;
  body.vertices3.assign(verts.begin(), verts.end());
  body.stage = ns.size();
  return body;
}

CheckReport cross_section_check(const StageBody& body, const NestedSequence& ns, const ConeSequences& cs,
                                std::size_t n) {
  require_consistent(ns, cs, "cross_section_check");
  if (n >= ns.size()) throw DomainError("cross_section_check: slice index out of range");
  CheckReport report;
  report.index = n;
  report.height = cs.betas[n];

  std::map<Scalar, std::size_t> slice_at;
  for (std::size_t m = 0; m < cs.betas.size(); ++m) slice_at.emplace(cs.betas[m], m);

  // Every vertex of the D half sits on a slice height and inside the cone over slice n there.
  const std::vector<Point> half = body.d_half();
  const std::vector<Point> base = planar_vertices(ns.polys[n], cs.lambdas[n]);
  std::map<std::size_t, ConvexPolygon> cone_cuts;
  for (const Point& v : half) {
    ++report.vertices_checked;
    const auto it = slice_at.find(v[2]);
    if (it == slice_at.end()) {
      report.violations.push_back("vertex at height " + v[2].str() + " lies between slices");
      continue;
    }
    const std::size_t m = it->second;
    auto cut = cone_cuts.find(m);
    if (cut == cone_cuts.end()) {
      cut = cone_cuts.emplace(m, convex_hull_2d(cone_slice(base, cs.betas[n], cs.alphas[n], cs.betas[m]))).first;
    }
    if (!polygon_contains(cut->second, planar_part(v))) {
      report.violations.push_back("slice " + str(m) + " vertex (" + v[0].str() + ", " + v[1].str() +
                                  ") outside the cone over slice " + str(n));
    }
  }

  // The slice polygon itself lies in the hull of the D half.
  for (const Point& v : base) {
    ++report.vertices_checked;
    if (!point_in_hull(half, embed(v, cs.betas[n]))) {
      report.violations.push_back("slice " + str(n) + " vertex (" + v[0].str() + ", " + v[1].str() +
                                  ") missing from the body");
    }
  }
  return report;
}

NormCarveCertificate shatter_with_norm(const StageBody& body, const NestedSequence& ns, const ConeSequences& cs,
                                       std::span<const Point> s, SubsetMask a, std::size_t m) {
  require_consistent(ns, cs, "shatter_with_norm");
  if (m == 0 || m >= ns.size()) throw DomainError("shatter_with_norm: slice index has no source polygon");
  if (s.size() > kMaxGroundSet) throw RefusalError("shatter_with_norm: too many points");

  NormCarveCertificate cert;
  cert.mask = a;
  cert.slice = m;
  cert.mu = Scalar(1) / ns.provenance[m].lambda;
  cert.r = ns.provenance[m].shift;
  cert.mu_prime = cert.mu / cs.lambdas[m];
  cert.offset = cs.betas[m];

  const ConvexPolygon source = scale_translate(ns.polys[m], cert.mu, cert.r);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (polygon_contains(source, s[i]) != static_cast<bool>(a >> i & 1)) {
      throw CarveMismatch("shatter_with_norm: source polygon " + str(m) + " disagrees with the subset at point " +
                              str(i),
                          i);
    }
  }

  const Point shift = embed(cert.r, Scalar(0)) - StageBody::w() * (cert.offset * cert.mu_prime);
  cert.g_vertices = scale_translate(body.vertices3, cert.mu_prime, shift);
  cert.verified = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool in = point_in_hull(cert.g_vertices, embed(s[i], Scalar(0)));
    cert.members.push_back(in);
    if (in != static_cast<bool>(a >> i & 1)) cert.verified = false;
  }
  return cert;
}

ConvexityReport convexity_witness(const StageBody& body, const NestedSequence& ns, std::size_t max_pairs) {
  if (ns.size() == 0) throw DomainError("convexity_witness: empty nested sequence");
  std::vector<Point> upper;
  std::vector<Point> lower;
  for (const Point& p : body.vertices3) {
    if (p[2].sign() > 0) upper.push_back(p);
    if (p[2].sign() < 0) lower.push_back(p);
  }
  ConvexityReport report;
  const std::size_t total = upper.size() * lower.size();
  if (total == 0 || max_pairs == 0) return report;
  const std::size_t stride = (total + max_pairs - 1) / max_pairs;
  const ConvexPolygon& p1 = ns.polys.front();
  for (std::size_t k = 0; k < total; k += stride) {
    const Point& x = upper[k / lower.size()];
    const Point& y = lower[k % lower.size()];
    const Scalar t0 = Scalar(1) - x[2];
    const Scalar s0 = Scalar(1) + y[2];
    const Scalar u = (Scalar(1) - s0) / (Scalar(2) - s0 - t0);
    const Point split = x * u + y * (Scalar(1) - u);
    ++report.pairs_checked;
    if (!split[2].is_zero() || !polygon_contains(p1, planar_part(split))) {
      report.violations.push_back("split point of pair " + str(k) + " leaves P_1");
    }
  }
  return report;
}

DemoReport demo_infinite_vc(std::size_t n, std::optional<Scalar> stage_margin, std::size_t max_n) {
  if (n == 0) throw DomainError("demo_infinite_vc: n must be at least 1");
  if (n > max_n) {
    throw RefusalError("demo_infinite_vc: n = " + str(n) + " exceeds the guard " + str(max_n));
  }
  DemoReport rep;
  rep.n = n;
  rep.points = circle_points(n);
  rep.margin = stage_margin ? *stage_margin : default_margin(rep.points);
  const std::vector<ConvexPolygon> qs = shattering_polygons(rep.points, rep.margin);

  Scalar extent;
  for (const ConvexPolygon& q : qs) {
    for (const Point& v : q.vertices()) extent = max(extent, linf_norm(v));
  }
  const ConvexPolygon p1 = convex_hull_2d(square_around(Point::zero(2), extent * Scalar(2)));
  rep.p1_contains_sources = std::all_of(qs.begin(), qs.end(), [&](const ConvexPolygon& q) {
    return std::all_of(q.vertices().begin(), q.vertices().end(),
                       [&](const Point& v) { return polygon_contains(p1, v); });
  });

  rep.nested = nest_sequence(qs, p1);
  rep.sequences = cone_sequences(rep.nested);
  rep.body = build_body(rep.nested, rep.sequences);
  rep.stage = rep.body.stage;
  if (!rep.body.symmetric()) rep.violations.push_back("body vertices are not closed under negation");

  for (std::size_t k = 0; k < rep.nested.size(); ++k) {
    rep.checks.push_back(cross_section_check(rep.body, rep.nested, rep.sequences, k));
    for (const std::string& v : rep.checks.back().violations) rep.violations.push_back(v);
  }
  rep.convexity = convexity_witness(rep.body, rep.nested);
  for (const std::string& v : rep.convexity.violations) rep.violations.push_back(v);

  for (SubsetMask a = 0; a < qs.size(); ++a) {
    rep.certificates.push_back(shatter_with_norm(rep.body, rep.nested, rep.sequences, rep.points, a, a + 1));
    if (!rep.certificates.back().verified) {
      rep.violations.push_back("certificate for subset " + std::to_string(a) + " fails membership");
    }
  }
  return rep;
}

}  // namespace vcnorms
