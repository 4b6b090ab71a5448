#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rohull/hulls.hpp"
#include "rohull/pchull.hpp"
#include "rohull/reports.hpp"

namespace py = pybind11;
using namespace rohull;

// Matrices and reports cross the boundary as JSON text; the Python package
// converts to and from Fraction/float values.
namespace {

Mode mode_of(const std::string& text) { return parse_mode(text); }

RunOptions options_from(const std::string& text) {
  Json j = Json::parse(text);
  RunOptions opt;
  if (j.contains("mode") && !j["mode"].is_null()) opt.mode = parse_mode(j["mode"].get<std::string>());
  if (j.contains("tol")) opt.tol = j["tol"].get<double>();
  if (j.contains("epsilon")) opt.epsilon = j["epsilon"].get<std::string>();
  if (j.contains("xi3")) opt.xi3 = j["xi3"].get<std::string>();
  for (auto [key, slot] : {std::pair{"N", &opt.N},
                           {"n_max", &opt.n_max},
                           {"rounds", &opt.rounds},
                           {"samples", &opt.samples},
                           {"steps", &opt.steps},
                           {"iters", &opt.iters}})
    if (j.contains(key)) *slot = j[key].get<int>();
  if (j.contains("input") && !j["input"].is_null()) opt.input_data = j["input"];
  return opt;
}

std::string run(const std::string& command, const std::string& options) {
  return make_report(command, options_from(options)).body.dump();
}

bool l2_member(const std::string& k, const std::string& x, const std::string& mode, double tol) {
  const Mode m = mode_of(mode);
  return l2_contains(matrices_from_json(Json::parse(k), m), mat2_from_json(Json::parse(x), m), tol);
}

std::string pc_hull_json(const std::string& k, const std::string& mode, double tol) {
  return to_json(pc_hull(matrices_from_json(Json::parse(k), mode_of(mode)), tol)).dump();
}

bool pc_member(const std::string& k, const std::string& x, const std::string& mode, double tol) {
  const Mode m = mode_of(mode);
  return pc_hull(matrices_from_json(Json::parse(k), m), tol).contains(mat2_from_json(Json::parse(x), m));
}

bool rank_one(const std::string& a, const std::string& b, const std::string& mode, double tol) {
  const Mode m = mode_of(mode);
  return rank_one_connected(mat2_from_json(Json::parse(a), m), mat2_from_json(Json::parse(b), m), tol);
}

// Decomposes x inside the first plane hull of K that contains it.
std::optional<std::string> decompose(const std::string& k, const std::string& x, const std::string& mode) {
  const Mode m = mode_of(mode);
  const std::vector<Mat2> pts = matrices_from_json(Json::parse(k), m);
  const Mat2 target = mat2_from_json(Json::parse(x), m);
  for (const auto& p : pc_hull(pts).planes) {
    if (!p.contains(target)) continue;
    std::vector<Mat2> members;
    for (int i : p.members) members.push_back(pts[i]);
    Caratheodory c = caratheodory_decompose(p.plane, members, target);
    Json out = {{"points", to_json(c.points)},
                {"weights", to_json(c.weights)},
                {"reconstruction", to_json(c.reconstruction)}};
    out["intermediate"] = c.intermediate ? to_json(*c.intermediate) : Json();
    return out.dump();
  }
  return std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_rohull, m) {
  m.doc() = "Exact and floating-point hull computations for 2x2 matrix sets";
  auto& base = py::register_exception<Error>(m, "RoHullError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());

  m.def("commands", &command_names);
  m.def("run", &run, py::arg("command"), py::arg("options") = "{}",
        "Runs a report command and returns its JSON document as text.");
  m.def("l2_contains", &l2_member, py::arg("k"), py::arg("x"), py::arg("mode"),
        py::arg("tol") = kRankTolerance);
  m.def("pc_hull", &pc_hull_json, py::arg("k"), py::arg("mode"), py::arg("tol") = kRankTolerance);
  m.def("pc_contains", &pc_member, py::arg("k"), py::arg("x"), py::arg("mode"),
        py::arg("tol") = kRankTolerance);
  m.def("rank_one_connected", &rank_one, py::arg("a"), py::arg("b"), py::arg("mode"),
        py::arg("tol") = kRankTolerance);
  m.def("caratheodory", &decompose, py::arg("k"), py::arg("x"), py::arg("mode"),
        "Convex decomposition inside the polyconvex hull, or None when x is outside it.");
}
