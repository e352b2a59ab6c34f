#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vcnorms/io.hpp"

namespace {

using vcnorms::io::json;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kNegative = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vcnorms::DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw vcnorms::DomainError("cannot write " + path);
}

struct Run {
  vcnorms::io::RunManifest manifest;
  std::string out_path;

  void input(const std::string& path, const std::string& text) {
    manifest.input_digests[path] = vcnorms::io::sha256_hex(text);
  }
  void artifact(const std::string& path, const std::string& text) {
    write_file(path, text);
    manifest.output_digests[path] = vcnorms::io::sha256_hex(text);
  }
  /// Writes the primary output to --out (plus its manifest) or to stdout.
  void emit(const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    artifact(out_path, text);
    write_file(out_path + ".manifest.json", vcnorms::io::to_json(manifest).dump(2) + "\n");
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

vcnorms::Point parse_translation(const std::string& text) {
  std::vector<vcnorms::Scalar> coords;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) coords.push_back(vcnorms::Scalar::parse(part));
  if (coords.size() != 2) throw vcnorms::DomainError("translation must be two comma-separated rationals");
  return vcnorms::Point(std::move(coords));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact VC-dimension constructions and certificates for norm balls"};
  app.require_subcommand(1);

  Run run;
  std::uint64_t seed = 1;
  std::size_t dim = 0;
  std::size_t n = 0;
  std::size_t budget = 1000;
  std::size_t max_guard = 0;
  std::string points_path;
  std::string generator_path;
  std::string lambda_text;
  std::string r_text;
  std::string mode = "cubes";
  std::string svg_path;
  std::string obj_path;
  std::string margin_text;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", run.out_path, "Write the primary output here and a manifest next to it");
    sub->add_option("--seed", seed, "Seed for all randomness");
  };

  auto* construct = app.add_subcommand("construct", "Build a cube-shatterable set in dimension d");
  construct->add_option("--dim", dim, "Dimension d >= 1")->required();
  construct->add_option("--max-guard", max_guard, "Largest dimension accepted");
  construct->add_option("--svg", svg_path, "Write a projection of the points and some certificate cubes");
  common(construct);

  auto* verify = app.add_subcommand("verify", "Decide whether a point set is shattered by cubes");
  verify->add_option("points", points_path, "JSON point set")->required();
  verify->add_option("--mode", mode, "Shattering family")->check(CLI::IsMember({"cubes"}));
  verify->add_option("--max-guard", max_guard, "Largest set searched for a maximum shattered subset");
  common(verify);

  auto* radon = app.add_subcommand("radon", "Radon partition of four planar points");
  radon->add_option("points", points_path, "JSON point set")->required();
  common(radon);

  auto* lemma6 = app.add_subcommand("lemma6", "Hull witness for four points and a homothety");
  lemma6->add_option("points", points_path, "JSON point set")->required();
  lemma6->add_option("--lambda", lambda_text, "Scale, as p/q")->required();
  lemma6->add_option("--r", r_text, "Translation, as x,y")->required();
  lemma6->add_option("--svg", svg_path, "Write the points, opposing pairs and witness hull");
  common(lemma6);

  auto* shatter4 = app.add_subcommand("shatter4", "Search homothets of a polygon for a shattering of four points");
  shatter4->add_option("points", points_path, "JSON set of four planar points")->required();
  shatter4->add_option("--generator", generator_path, "JSON vertex list of the generator polygon")->required();
  shatter4->add_option("--budget", budget, "Number of candidate homothets");
  common(shatter4);

  auto* norm3 = app.add_subcommand("norm3", "Build a stage body in R^3 whose scaled copies shatter n points");
  norm3->add_option("--n", n, "Number of points")->required();
  norm3->add_option("--svg", svg_path, "Write cross-sections as SVG");
  norm3->add_option("--obj", obj_path, "Write the body's vertices as OBJ");
  norm3->add_option("--margin", margin_text, "Inflation margin, as p/q");
  norm3->add_option("--max-guard", max_guard, "Largest n accepted");
  common(norm3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  auto& m = run.manifest;
  m.seed = seed;
  m.command = app.get_subcommands().front()->get_name();
  try {
    if (*construct) {
      m.parameters["dim"] = std::to_string(dim);
      const std::size_t guard = max_guard ? max_guard : vcnorms::kDefaultMaxConstructionDim;
      const auto set = vcnorms::build_shatterable_set(dim, guard);
      if (!svg_path.empty()) {
        std::vector<vcnorms::SubsetMask> masks{set.report.entries.size() - 1};
        for (std::size_t i = 0; i < set.points.size() && masks.size() < 8; ++i) {
          masks.push_back(vcnorms::SubsetMask{1} << i);
        }
        run.artifact(svg_path, vcnorms::io::construction_svg(set, masks));
      }
      run.emit(dump(vcnorms::io::to_json(set)));
      std::cerr << "construct: " << set.points.size() << " points in R^" << dim << ", all "
                << set.report.entries.size() << " subsets certified\n";
      return kOk;
    }

    if (*verify) {
      const std::string text = read_file(points_path);
      run.input(points_path, text);
      m.parameters["mode"] = mode;
      const auto pts = vcnorms::io::points_from_json(vcnorms::io::parse_json(text));
      if (pts.empty()) throw vcnorms::DomainError("empty point set");
      if (pts.size() > vcnorms::kMaxGroundSet) throw vcnorms::RefusalError("too many points");
      const auto report = vcnorms::is_shattered(pts);
      json out = vcnorms::io::to_json(report);
      const std::size_t guard = max_guard ? max_guard : 12;
      if (!report.shattered() && pts.size() <= guard) {
        out["max_shattered"] = vcnorms::io::to_json(vcnorms::max_shattered_subset(pts, guard));
      }
      run.emit(dump(out));
      return report.shattered() ? kOk : kNegative;
    }

    if (*radon) {
      const std::string text = read_file(points_path);
      run.input(points_path, text);
      const auto pts = vcnorms::io::points_from_json(vcnorms::io::parse_json(text));
      run.emit(dump(vcnorms::io::to_json(vcnorms::radon_partition(pts))));
      return kOk;
    }

    if (*lemma6) {
      const std::string text = read_file(points_path);
      run.input(points_path, text);
      m.parameters["lambda"] = lambda_text;
      m.parameters["r"] = r_text;
      const auto pts = vcnorms::io::points_from_json(vcnorms::io::parse_json(text));
      const auto lambda = vcnorms::Scalar::parse(lambda_text);
      const auto r = parse_translation(r_text);
      const auto partition = vcnorms::radon_partition(pts);
      json out;
      std::optional<vcnorms::HullWitness> witness;
      if (std::holds_alternative<vcnorms::InteriorPoint>(partition)) {
        out = {{"partition", vcnorms::io::to_json(partition)},
               {"witness", vcnorms::io::to_json(vcnorms::nonshattering_contradiction(
                               pts, vcnorms::Scalar(1), vcnorms::Point::zero(2), vcnorms::Scalar(1),
                               vcnorms::Point::zero(2)))}};
      } else {
        const auto inst = vcnorms::normalize_instance(pts, lambda, r);
        witness = vcnorms::inseparable_witness(inst);
        out = {{"partition", vcnorms::io::to_json(partition)},
               {"instance", vcnorms::io::to_json(inst)},
               {"witness", vcnorms::io::to_json(*witness)}};
      }
      if (!svg_path.empty()) run.artifact(svg_path, vcnorms::io::witness_svg(pts, partition, witness));
      run.emit(dump(out));
      return kOk;
    }

    if (*shatter4) {
      const std::string text = read_file(points_path);
      const std::string gen_text = read_file(generator_path);
      run.input(points_path, text);
      run.input(generator_path, gen_text);
      m.parameters["budget"] = std::to_string(budget);
      const auto pts = vcnorms::io::points_from_json(vcnorms::io::parse_json(text));
      const auto gen = vcnorms::io::points_from_json(vcnorms::io::parse_json(gen_text));
      const auto log = vcnorms::attempt_shatter_four(vcnorms::convex_hull_2d(gen), pts, budget, seed);
      std::string lines;
      for (const json& line : vcnorms::io::failure_log_lines(log)) lines += line.dump() + "\n";
      run.emit(lines);
      std::cerr << "shatter4: " << log.candidates << " candidates, " << log.shatterings << " shatterings, "
                << log.entries.size() << " witnessed pair carvings\n";
      return log.shatterings == 0 ? kOk : kInternal;
    }

    if (*norm3) {
      m.parameters["n"] = std::to_string(n);
      std::optional<vcnorms::Scalar> margin;
      if (!margin_text.empty()) {
        margin = vcnorms::Scalar::parse(margin_text);
        m.parameters["margin"] = margin_text;
      }
      const std::size_t guard = max_guard ? max_guard : vcnorms::kDefaultMaxDemoPoints;
      const auto report = vcnorms::demo_infinite_vc(n, margin, guard);
      if (!svg_path.empty()) {
        std::vector<std::size_t> slices;
        for (std::size_t k = 0; k < std::min<std::size_t>(report.stage, 8); ++k) slices.push_back(k);
        run.artifact(svg_path, vcnorms::io::sections_svg(report, slices));
      }
      if (!obj_path.empty()) run.artifact(obj_path, vcnorms::io::body_obj(report.body));
      run.emit(dump(vcnorms::io::to_json(report)));
      std::cerr << "norm3: stage " << report.stage << ", " << report.certificates.size() << " certificates, "
                << report.violations.size() << " violations\n";
      return report.ok() ? kOk : kInternal;
    }
  } catch (const vcnorms::InvariantError& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return kInternal;
  } catch (const vcnorms::RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
