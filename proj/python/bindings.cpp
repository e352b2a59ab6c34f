#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vcnorms/io.hpp"

namespace py = pybind11;
using vcnorms::io::json;

namespace {

std::vector<vcnorms::Point> points(const std::string& text) {
  return vcnorms::io::points_from_json(vcnorms::io::parse_json(text));
}

std::string build_shatterable_set(std::size_t d) {
  return vcnorms::io::to_json(vcnorms::build_shatterable_set(d)).dump();
}

std::string is_shattered(const std::string& pts_json) {
  const auto pts = points(pts_json);
  if (pts.size() > vcnorms::kMaxGroundSet) throw vcnorms::RefusalError("too many points");
  return vcnorms::io::to_json(vcnorms::is_shattered(pts)).dump();
}

std::string max_shattered_subset(const std::string& pts_json, std::size_t limit) {
  return vcnorms::io::to_json(vcnorms::max_shattered_subset(points(pts_json), limit)).dump();
}

std::string radon_partition(const std::string& pts_json) {
  return vcnorms::io::to_json(vcnorms::radon_partition(points(pts_json))).dump();
}

std::string hull_witness(const std::string& pts_json, const std::string& lambda, const std::string& r_json) {
  const auto inst = vcnorms::normalize_instance(points(pts_json), vcnorms::Scalar::parse(lambda),
                                                vcnorms::io::point_from_json(vcnorms::io::parse_json(r_json)));
  json out = {{"instance", vcnorms::io::to_json(inst)},
              {"witness", vcnorms::io::to_json(vcnorms::inseparable_witness(inst))}};
  return out.dump();
}

std::string attempt_shatter_four(const std::string& generator_json, const std::string& pts_json, std::size_t budget,
                                 std::uint64_t seed) {
  const auto log = vcnorms::attempt_shatter_four(vcnorms::convex_hull_2d(points(generator_json)), points(pts_json),
                                                 budget, seed);
  json lines = json::array();
  for (const json& line : vcnorms::io::failure_log_lines(log)) lines.push_back(line);
  return lines.dump();
}

std::string demo_infinite_vc(std::size_t n, std::optional<std::string> margin, std::size_t max_n) {
  std::optional<vcnorms::Scalar> m;
  if (margin) m = vcnorms::Scalar::parse(*margin);
  return vcnorms::io::to_json(vcnorms::demo_infinite_vc(n, m, max_n)).dump();
}

}  // namespace

PYBIND11_MODULE(_vcnorms, m) {
  m.doc() = "Exact VC-dimension constructions for cubes and norm balls (JSON-in, JSON-out core)";

  py::register_exception<vcnorms::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<vcnorms::RefusalError>(m, "RefusalError", PyExc_RuntimeError);
  py::register_exception<vcnorms::InvariantError>(m, "InvariantError", PyExc_AssertionError);
  py::register_exception<vcnorms::CarveMismatch>(m, "CarveMismatch", PyExc_ValueError);

  m.def("build_shatterable_set", &build_shatterable_set, py::arg("d"));
  m.def("is_shattered", &is_shattered, py::arg("points"));
  m.def("max_shattered_subset", &max_shattered_subset, py::arg("points"), py::arg("limit"));
  m.def("radon_partition", &radon_partition, py::arg("points"));
  m.def("hull_witness", &hull_witness, py::arg("points"), py::arg("lam"), py::arg("r"));
  m.def("attempt_shatter_four", &attempt_shatter_four, py::arg("generator"), py::arg("points"), py::arg("budget"),
        py::arg("seed"));
  m.def("demo_infinite_vc", &demo_infinite_vc, py::arg("n"), py::arg("margin") = py::none(),
        py::arg("max_n") = vcnorms::kDefaultMaxDemoPoints);
  m.def("sha256_hex", [](const py::bytes& b) { return vcnorms::io::sha256_hex(std::string(b)); }, py::arg("data"));
  m.attr("cube_vc_dimension") = py::cpp_function([](std::size_t d) { return vcnorms::cube_vc_dimension(d); });
}
