#pragma once

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rohull/constructions.hpp"
#include "rohull/hulls.hpp"
#include "rohull/pchull.hpp"
#include "rohull/t4.hpp"

namespace rohull {

// Insertion-ordered so that reports come out in a fixed, readable layout.
using Json = nlohmann::ordered_json;

// Exact scalars become "p/q" strings, floats become JSON numbers.
Json to_json(const Scalar& s);
Json to_json(const Mat2& m);
Json to_json(const Matrix& m);
Json to_json(const DiagPt& p);
Json to_json(const TriPt& p);
Json to_json(const SymPt& p);
Json to_json(const LaminateSet& s);
Json to_json(const Distance& d);
Json to_json(const T4Witness& w, const T4Residuals& r);
Json to_json(const T4Residuals& r);
Json to_json(const DiscreteLaminate& l);
Json to_json(const PcHull& h);
Json to_json(const SeparatorWitness& w);

template <class T, std::size_t N>
Json to_json(const std::array<T, N>& items) {
  Json out = Json::array();
  for (const auto& x : items) out.push_back(to_json(x));
  return out;
}

template <class T>
Json to_json(const std::vector<T>& items) {
  Json out = Json::array();
  for (const auto& x : items) out.push_back(to_json(x));
  return out;
}

/// Accepts a string ("3/4", "0.25") or a number. Numbers are read in
/// exact mode through their decimal text, so 0.1 becomes 1/10.
Scalar scalar_from_json(const Json& j, Mode mode);
/// [[a11, a12], [a21, a22]]
Mat2 mat2_from_json(const Json& j, Mode mode);
/// Either an array of matrices or an object with a "points" array.
std::vector<Mat2> matrices_from_json(const Json& j, Mode mode);
/// An array of matrices, or {points: [...], segments: [{a, b}]}.
LaminateSet laminate_set_from_json(const Json& j, Mode mode);

/// Parses a whole JSON document; throws rohull::Error on malformed input.
Json parse_json_file(const std::string& path);

/// One CSV row "subspace,x,y,z" per point.
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, Subspace s, const Mat2& m);

/// Point cloud of a laminate set: its points plus `samples` evenly
/// spaced points on every segment.
std::string laminate_csv(const LaminateSet& s, Subspace subspace, int samples = 16);

}  // namespace rohull
