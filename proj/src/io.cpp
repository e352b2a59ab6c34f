#include "vcnorms/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace vcnorms::io {

namespace {

json mask_list(const std::vector<bool>& flags) {
  json out = json::array();
  for (std::size_t m = 0; m < flags.size(); ++m) {
    if (flags[m]) out.push_back(m);
  }
  return out;
}

json strings(const std::vector<std::string>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

json scalars(std::span<const Scalar> v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(to_json(s));
  return out;
}

std::string interval_kind(Interval::Kind k) {
  switch (k) {
    case Interval::Kind::LeftRay: return "left";
    case Interval::Kind::RightRay: return "right";
    case Interval::Kind::FullLine: return "full";
    case Interval::Kind::Bounded: return "bounded";
  }
  return "?";
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

json to_json(const Scalar& s) { return s.str(); }

json to_json(const Point& p) { return scalars(p.coords()); }

json to_json(std::span<const Point> pts) {
  json out = json::array();
  for (const Point& p : pts) out.push_back(to_json(p));
  return out;
}

json to_json(const Cube& c) { return {{"lo", to_json(c.lo)}, {"side", to_json(c.side)}}; }

json to_json(const HalfProduct& h) {
  json out = json::array();
  for (const Interval& i : h.intervals) {
    json j = {{"kind", interval_kind(i.kind)}};
    if (i.kind == Interval::Kind::RightRay || i.kind == Interval::Kind::Bounded) j["lo"] = to_json(i.lo);
    if (i.kind == Interval::Kind::LeftRay || i.kind == Interval::Kind::Bounded) j["hi"] = to_json(i.hi);
    out.push_back(std::move(j));
  }
  return out;
}

json to_json(const ShatterReport& r) {
  json subsets = json::array();
  for (std::size_t m = 0; m < r.entries.size(); ++m) {
    json e = {{"mask", m}};
    if (const auto* c = std::get_if<Cube>(&r.entries[m])) {
      e["cube"] = to_json(*c);
    } else {
      e["cube"] = nullptr;
      e["nodes"] = std::get<Infeasible>(r.entries[m]).nodes;
    }
    subsets.push_back(std::move(e));
  }
  return {{"n", r.ground_set.size()},
          {"points", to_json(r.ground_set)},
          {"shattered", r.shattered()},
          {"infeasible_masks", r.infeasible_masks()},
          {"subsets", std::move(subsets)}};
}

json to_json(const ShatterableSet& s) {
  json certs = json::array();
  for (std::size_t m = 0; m < s.report.entries.size(); ++m) {
    json e = {{"mask", m}, {"cube", to_json(std::get<Cube>(s.report.entries[m]))}};
    if (m < s.sources.size() && s.sources[m]) e["halfproduct"] = to_json(*s.sources[m]);
    certs.push_back(std::move(e));
  }
  return {{"dim", s.dim}, {"points", to_json(s.points)}, {"certificates", std::move(certs)}};
}

json to_json(const MaxShattered& m) {
  return {{"size", m.size}, {"witness", m.witness}};
}

json to_json(const RadonResult& r) {
  if (const auto* ip = std::get_if<InteriorPoint>(&r)) {
    return {{"kind", "interior_point"}, {"index", ip->index}};
  }
  const auto& s = std::get<RadonSplit>(r);
  return {{"kind", "opposing_pairs"},
          {"pair1", s.pair1_index},
          {"pair2", s.pair2_index},
          {"crossing", to_json(s.crossing)}};
}

json to_json(const Lemma6Instance& inst) {
  return {{"a", to_json(inst.a)},
          {"b", to_json(inst.b)},
          {"c", to_json(inst.c)},
          {"d", to_json(inst.d)},
          {"index", inst.index},
          {"lambda", to_json(inst.lambda)},
          {"r", to_json(inst.r)},
          {"crossing", to_json(inst.crossing)},
          {"r_centered", to_json(inst.r_centered)},
          {"gamma", to_json(inst.gamma)},
          {"delta", to_json(inst.delta)},
          {"alpha", to_json(inst.alpha)},
          {"beta", to_json(inst.beta)},
          {"discriminant", to_json(inst.discriminant)}};
}

json to_json(const HullWitness& w) {
  return {{"member", to_json(w.member)},
          {"hull", to_json(std::span<const Point>(w.hull_points))},
          {"coefficients", scalars(w.coefficients)},
          {"branch", w.branch}};
}

json to_json(const ContradictionWitness& w) {
  json out = {{"kind", w.kind == ContradictionWitness::Kind::InteriorPoint ? "interior_point" : "opposing_pairs"},
              {"member", to_json(w.member)},
              {"hull", to_json(w.hull)},
              {"coefficients", scalars(w.coefficients)},
              {"mu", to_json(w.mu)},
              {"v", to_json(w.v)}};
  if (w.kind == ContradictionWitness::Kind::InteriorPoint) {
    out["interior_index"] = w.interior_index;
  } else {
    out["branch"] = w.branch;
  }
  return out;
}

json to_json(const FamilyMember& m) { return {{"lambda", to_json(m.lambda)}, {"r", to_json(m.r)}}; }

std::vector<json> failure_log_lines(const FailureLog& log) {
  std::vector<json> lines;
  json summary = {{"type", "summary"},
                  {"candidates", log.candidates},
                  {"shatterings", log.shatterings},
                  {"carved_masks", mask_list(log.carved)},
                  {"entries", log.entries.size()}};
  if (log.interior) {
    summary["interior"] = to_json(*log.interior);
  } else {
    summary["pair_masks"] = log.pair_masks;
  }
  lines.push_back(std::move(summary));
  for (const FailureEntry& e : log.entries) {
    lines.push_back({{"type", "entry"},
                     {"candidate", e.candidate},
                     {"pair", e.pair},
                     {"carver", to_json(e.carver)},
                     {"partner", to_json(e.partner)},
                     {"partner_synthesized", e.partner_synthesized},
                     {"forced_index", e.forced_index},
                     {"witness", to_json(e.witness)}});
  }
  return lines;
}

json to_json(const DemoReport& r) {
  json polys = json::array();
  for (std::size_t k = 0; k < r.nested.size(); ++k) {
    polys.push_back({{"vertices", to_json(r.nested.polys[k].vertices())},
                     {"lambda", to_json(r.nested.provenance[k].lambda)},
                     {"shift", to_json(r.nested.provenance[k].shift)}});
  }
  json checks = json::array();
  for (const CheckReport& c : r.checks) {
    checks.push_back({{"index", c.index},
                      {"height", to_json(c.height)},
                      {"vertices_checked", c.vertices_checked},
                      {"ok", c.ok()}});
  }
  json certs = json::array();
  for (const NormCarveCertificate& c : r.certificates) {
    certs.push_back({{"mask", c.mask},
                     {"slice", c.slice},
                     {"mu", to_json(c.mu)},
                     {"r", to_json(c.r)},
                     {"mu_prime", to_json(c.mu_prime)},
                     {"offset", to_json(c.offset)},
                     {"members", c.members},
                     {"verified", c.verified}});
  }
  return {{"n", r.n},
          {"stage", r.stage},
          {"points", to_json(r.points)},
          {"margin", to_json(r.margin)},
          {"p1_contains_sources", r.p1_contains_sources},
          {"polygons", std::move(polys)},
          {"sequences",
           {{"alphas", scalars(r.sequences.alphas)},
            {"betas", scalars(r.sequences.betas)},
            {"lambdas", scalars(r.sequences.lambdas)}}},
          {"body_vertices", r.body.vertices3.size()},
          {"cross_sections", std::move(checks)},
          {"convexity_pairs", r.convexity.pairs_checked},
          {"certificates", std::move(certs)},
          {"violations", strings(r.violations)}};
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw DomainError("expected a rational as \"p/q\" or an integer");
}

Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("expected a non-empty coordinate array");
  std::vector<Scalar> coords;
  for (const json& x : j) coords.push_back(scalar_from_json(x));
  return Point(std::move(coords));
}

std::vector<Point> points_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("points")) throw DomainError("object has no \"points\" field");
    arr = &j["points"];
  }
  if (!arr->is_array()) throw DomainError("expected an array of points");
  std::vector<Point> pts;
  for (const json& p : *arr) pts.push_back(point_from_json(p));
  for (const Point& p : pts) {
    if (p.dim() != pts.front().dim()) throw DomainError("points have mixed dimensions");
  }
  return pts;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

std::string body_obj(const StageBody& body) {
  std::ostringstream os;
  os << "# stage " << body.stage << ", " << body.vertices3.size() << " vertices\n";
  for (const Point& p : body.vertices3) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p[0].to_double(), p[1].to_double(), p[2].to_double());
    os << buf;
  }
  return os.str();
}

namespace {

struct Shape {
  enum class Kind { Polygon, Segment, Dot } kind;
  std::vector<Point> pts;
  std::string colour;
};

// Square panels of autoscaled planar shapes laid out in a grid.
class SvgCanvas {
 public:
  static constexpr double kPanel = 240;
  static constexpr double kPad = 20;

  void panel(std::string title, std::vector<Shape> shapes) { panels_.push_back({std::move(title), std::move(shapes)}); }

  std::string render() const {
    const std::size_t cols = std::clamp<std::size_t>(panels_.size(), 1, 4);
    const std::size_t rows = (panels_.size() + cols - 1) / cols;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(cols * kPanel)
       << "\" height=\"" << fmt(std::max<std::size_t>(rows, 1) * kPanel) << "\">\n";
    for (std::size_t k = 0; k < panels_.size(); ++k) draw(os, k, cols);
    os << "</svg>\n";
    return os.str();
  }

 private:
  struct Panel {
    std::string title;
    std::vector<Shape> shapes;
  };

  void draw(std::ostringstream& os, std::size_t k, std::size_t cols) const {
    const Panel& p = panels_[k];
    const double ox = static_cast<double>(k % cols) * kPanel;
    const double oy = static_cast<double>(k / cols) * kPanel;
    double lo[2] = {0, 0};
    double hi[2] = {0, 0};
    bool first = true;
    for (const Shape& sh : p.shapes) {
      for (const Point& q : sh.pts) {
        for (int j = 0; j < 2; ++j) {
          const double v = q[j].to_double();
          lo[j] = first ? v : std::min(lo[j], v);
          hi[j] = first ? v : std::max(hi[j], v);
        }
        first = false;
      }
    }
    const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});
    const double scale = (kPanel - 2 * kPad) / span;
    const double cx = (lo[0] + hi[0]) / 2;
    const double cy = (lo[1] + hi[1]) / 2;
    auto x = [&](const Point& q) { return fmt(ox + kPanel / 2 + (q[0].to_double() - cx) * scale); };
    auto y = [&](const Point& q) { return fmt(oy + kPanel / 2 - (q[1].to_double() - cy) * scale); };

    os << "  <rect x=\"" << fmt(ox) << "\" y=\"" << fmt(oy) << "\" width=\"" << fmt(kPanel) << "\" height=\""
       << fmt(kPanel) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    os << "  <text x=\"" << fmt(ox + 6) << "\" y=\"" << fmt(oy + 14) << "\" font-size=\"11\">" << p.title
       << "</text>\n";
    for (const Shape& sh : p.shapes) {
      switch (sh.kind) {
        case Shape::Kind::Polygon:
          os << "  <polygon fill=\"" << sh.colour << "\" fill-opacity=\"0.35\" stroke=\"" << sh.colour
             << "\" points=\"";
          for (const Point& q : sh.pts) os << x(q) << ',' << y(q) << ' ';
          os << "\"/>\n";
          break;
        case Shape::Kind::Segment:
          os << "  <line x1=\"" << x(sh.pts[0]) << "\" y1=\"" << y(sh.pts[0]) << "\" x2=\"" << x(sh.pts[1])
             << "\" y2=\"" << y(sh.pts[1]) << "\" stroke=\"" << sh.colour << "\"/>\n";
          break;
        case Shape::Kind::Dot:
          for (const Point& q : sh.pts) {
            os << "  <circle cx=\"" << x(q) << "\" cy=\"" << y(q) << "\" r=\"3\" fill=\"" << sh.colour
               << "\"/>\n";
          }
          break;
      }
    }
  }

  std::vector<Panel> panels_;
};

std::vector<Point> planar(std::span<const Point> pts) {
  std::vector<Point> out;
  for (const Point& p : pts) out.push_back(p.dim() >= 2 ? Point{p[0], p[1]} : Point{p[0], Scalar(0)});
  return out;
}

}  // namespace

std::string sections_svg(const DemoReport& r, const std::vector<std::size_t>& slices) {
  SvgCanvas canvas;
  canvas.panel("points (n = " + std::to_string(r.n) + ")", {{Shape::Kind::Dot, r.points, "#d62728"}});
  for (std::size_t k : slices) {
    if (k >= r.nested.size()) throw DomainError("sections_svg: slice index out of range");
    std::vector<Point> poly;
    for (const Point& v : r.nested.polys[k].vertices()) poly.push_back(v * r.sequences.lambdas[k]);
    canvas.panel("slice " + std::to_string(k + 1) + ", height " + r.sequences.betas[k].str(),
                 {{Shape::Kind::Polygon, poly, "#08519c"}});
  }
  return canvas.render();
}

std::string construction_svg(const ShatterableSet& s, const std::vector<SubsetMask>& masks) {
  SvgCanvas canvas;
  const std::vector<Point> pts = planar(s.points);
  for (SubsetMask m : masks) {
    if (m >= s.report.entries.size()) throw DomainError("construction_svg: mask out of range");
    std::vector<Shape> shapes;
    if (const auto* c = std::get_if<Cube>(&s.report.entries[m])) {
      const Point lo = planar(std::span<const Point>(&c->lo, 1)).front();
      const Scalar side1 = s.dim >= 2 ? c->side : Scalar(0);
      shapes.push_back({Shape::Kind::Polygon,
                        {lo, lo + Point{c->side, Scalar(0)}, lo + Point{c->side, side1}, lo + Point{Scalar(0), side1}},
                        "#2ca02c"});
    }
    shapes.push_back({Shape::Kind::Dot, pts, "#d62728"});
    canvas.panel("subset " + std::to_string(m), std::move(shapes));
  }
  return canvas.render();
}

std::string witness_svg(std::span<const Point> s4, const RadonResult& partition,
                        const std::optional<HullWitness>& witness) {
  SvgCanvas canvas;
  std::vector<Shape> shapes;
  if (const auto* split = std::get_if<RadonSplit>(&partition)) {
    shapes.push_back({Shape::Kind::Segment, {split->pair1[0], split->pair1[1]}, "#1f77b4"});
    shapes.push_back({Shape::Kind::Segment, {split->pair2[0], split->pair2[1]}, "#ff7f0e"});
  }
  shapes.push_back({Shape::Kind::Dot, std::vector<Point>(s4.begin(), s4.end()), "#d62728"});
  canvas.panel("points and opposing pairs", shapes);
  if (witness) {
    const ConvexPolygon hull = convex_hull_2d(witness->hull_points);
    canvas.panel("witness hull, branch " + std::to_string(witness->branch),
                 {{Shape::Kind::Polygon, std::vector<Point>(hull.vertices().begin(), hull.vertices().end()), "#9467bd"},
                  {Shape::Kind::Dot, {witness->member}, "#000000"}});
  }
  return canvas.render();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InvariantError("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"parameters", m.parameters},
          {"seed", m.seed},
          {"artifact_version", kArtifactVersion},
          {"inputs", m.input_digests},
          {"outputs", m.output_digests}};
}

}  // namespace vcnorms::io
