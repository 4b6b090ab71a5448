#include "rohull/serialize.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace rohull {

Json to_json(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  return s.to_double();
}

Json to_json(const Mat2& m) {
  return Json::array(
      {Json::array({to_json(m.a11), to_json(m.a12)}), Json::array({to_json(m.a21), to_json(m.a22)})});
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const DiagPt& p) { return Json::array({to_json(p.x), to_json(p.y)}); }
Json to_json(const TriPt& p) { return Json::array({to_json(p.x), to_json(p.y), to_json(p.z)}); }
Json to_json(const SymPt& p) { return Json::array({to_json(p.x), to_json(p.y), to_json(p.z)}); }

Json to_json(const LaminateSet& s) {
  Json segs = Json::array();
  for (const auto& seg : s.segments) {
    Json j{{"a", to_json(seg.a)}, {"b", to_json(seg.b)}, {"generation", seg.generation}};
    if (seg.approximate) j["approximate"] = true;
    segs.push_back(std::move(j));
  }
  Json out{{"points", to_json(s.points)}, {"segments", std::move(segs)}, {"order", s.order}};
  if (s.irrational_roots_skipped > 0) out["irrational_roots_skipped"] = s.irrational_roots_skipped;
  return out;
}

Json to_json(const Distance& d) {
  Json out{{"squared", to_json(d.squared)}, {"exact", d.exact && d.value_is_exact()}};
  out["value"] = to_json(d.value());
  auto [lo, hi] = d.enclosure();
  out["enclosure"] = Json::array({lo, hi});
  return out;
}

Json to_json(const T4Residuals& r) {
  return Json{{"equation", to_json(r.equation_residual)},
              {"det_C", to_json(r.det_C)},
              {"sum_C", to_json(r.sum_residual)},
              {"margin", to_json(r.margin)},
              {"accepted", r.accepted}};
}

Json to_json(const T4Witness& w, const T4Residuals& r) {
  Json out{{"ordering", w.ordering}, {"P", to_json(w.P)},       {"C", to_json(w.C)},
           {"mu", to_json(w.mu)},    {"residuals", to_json(r)}, {"exact", w.exact}};
  if (!w.cyclic_class.empty()) {
    out["cyclic_class"] = w.cyclic_class;
    out["rotation_duplicate"] = w.rotation_duplicate;
  }
  return out;
}

Json to_json(const DiscreteLaminate& l) {
  Json atoms = Json::array();
  for (const auto& a : l.atoms)
    atoms.push_back({{"matrix", to_json(a.matrix)}, {"weight", to_json(a.weight)}});
  return Json{{"atoms", std::move(atoms)},
              {"barycenter", to_json(l.barycenter)},
              {"off_support_mass", to_json(l.off_support_mass)},
              {"splits", l.history.size()}};
}

Json to_json(const PcHull& h) {
  Json planes = Json::array();
  for (const auto& p : h.planes) {
    planes.push_back({{"kind", std::string(to_string(p.plane.kind))},
                      {"generator", to_json(p.plane.generator)},
                      {"basepoint", to_json(p.plane.basepoint)},
                      {"members", p.members},
                      {"polygon_vertices", to_json(p.polygon)}});
  }
  return Json{{"planes", std::move(planes)}, {"singletons", to_json(h.singletons)}};
}

Json to_json(const SeparatorWitness& w) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < w.pairs.size(); ++i)
    pairs.push_back(
        {{"i", w.pairs[i].first}, {"j", w.pairs[i].second}, {"det", to_json(w.pairwise_dets[i])}});
  return Json{{"subspace", std::string(to_string(w.subspace))},
              {"boundary_points", to_json(w.boundary_points)},
              {"pairwise_dets", std::move(pairs)}};
}

Scalar scalar_from_json(const Json& j, Mode mode) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), mode);
  if (j.is_number_integer()) return Scalar::of(mode, j.get<long>());
  if (j.is_number()) {
    if (mode == Mode::floating) return Scalar::from_double(j.get<double>());
    return Scalar::parse(format_double(j.get<double>()), mode);
  }
  throw Error("expected a number or a \"p/q\" string, got " + j.dump());
}

Mat2 mat2_from_json(const Json& j, Mode mode) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2)
    throw Error("expected a 2x2 matrix [[a11, a12], [a21, a22]], got " + j.dump());
  return {scalar_from_json(j[0][0], mode), scalar_from_json(j[0][1], mode), scalar_from_json(j[1][0], mode),
          scalar_from_json(j[1][1], mode)};
}

std::vector<Mat2> matrices_from_json(const Json& j, Mode mode) {
  const Json& arr = j.is_object() ? j.at("points") : j;
  if (!arr.is_array()) throw Error("expected an array of matrices");
  std::vector<Mat2> out;
  for (const auto& m : arr) out.push_back(mat2_from_json(m, mode));
  return out;
}

LaminateSet laminate_set_from_json(const Json& j, Mode mode) {
  if (j.is_array()) return LaminateSet::from_points(matrices_from_json(j, mode));
  if (!j.is_object()) throw Error("expected a laminate set object");
  LaminateSet s;
  if (j.contains("points")) s.points = matrices_from_json(j["points"], mode);
  if (j.contains("segments")) {
    for (const auto& seg : j["segments"]) {
      RankOneSegment r{mat2_from_json(seg.at("a"), mode), mat2_from_json(seg.at("b"), mode),
                       seg.value("generation", 0), false};
      if (r.a == r.b) throw Error("segment endpoints coincide");
      if (!det_vanishes(r.a - r.b)) throw Error("segment endpoints are not rank-one connected");
      s.segments.push_back(std::move(r));
    }
  }
  s.order = j.value("order", s.segments.empty() ? 0 : 1);
  return s;
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read input file " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

void write_csv_header(std::ostream& os) { os << "subspace,x,y,z\n"; }

void write_csv_row(std::ostream& os, Subspace s, const Mat2& m) {
  auto c = coordinates(m, s);
  os << to_string(s) << ',' << c[0].to_string() << ',' << c[1].to_string() << ',' << c[2].to_string() << '\n';
}

std::string laminate_csv(const LaminateSet& s, Subspace subspace, int samples) {
  std::ostringstream os;
  write_csv_header(os);
  for (const auto& p : s.points) write_csv_row(os, subspace, p);
  for (const auto& seg : s.segments)
    for (int i = 0; i <= samples; ++i)
      write_csv_row(os, subspace,
                    lerp(seg.a, seg.b, Scalar::convert(Scalar::ratio(i, samples), seg.a.mode())));
  return os.str();
}

}  // namespace rohull
