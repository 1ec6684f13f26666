#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "bargmann.hpp"
#include "dual_algebra.hpp"
#include "errors.hpp"
#include "taylor.hpp"

namespace fockm::io {

using nlohmann::json;

// Complex numbers travel as [re, im]; a bare number is read as a real value.

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a complex number as [re, im], got " + j.dump());
}

inline json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

inline std::vector<cplx> complex_vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of complex numbers");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

inline json require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

/// {"coeffs": [[re, im], ...]}
inline json to_json(const TaylorCoeffs& f) { return json{{"coeffs", to_json(f.coeffs())}}; }

inline TaylorCoeffs taylor_from_json(const json& j) { return TaylorCoeffs(complex_vector_from_json(require(j, "coeffs"))); }

/// {"hermite_coeffs": [[re, im], ...]}
inline json to_json(const L2Element& g) { return json{{"hermite_coeffs", to_json(g.hermite_coeffs)}}; }

inline L2Element l2_from_json(const json& j) {
  return L2Element{complex_vector_from_json(require(j, "hermite_coeffs"))};
}

/// {"coeffs": [[re, im], ...], "level": m}; the level defaults to 1.
inline json to_json(const DualSequence& b) { return json{{"coeffs", to_json(b.coeffs)}, {"level", b.level}}; }

inline DualSequence dual_from_json(const json& j) {
  DualSequence b;
  b.coeffs = complex_vector_from_json(require(j, "coeffs"));
  b.level = j.value("level", 1);
  return b;
}

/// [{"t": t, "coeffs": [[re, im], ...]}, ...]
inline std::vector<PathSample> path_from_json(const json& j) {
  if (!j.is_array()) throw InputError("a path is an array of {\"t\", \"coeffs\"} samples");
  std::vector<PathSample> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    PathSample s;
    s.t = require(e, "t").get<double>();
    s.value = dual_from_json(e);
    out.push_back(std::move(s));
  }
  return out;
}

inline json to_json(const std::vector<PathSample>& path) {
  json a = json::array();
  for (const auto& s : path) a.push_back(json{{"t", s.t}, {"coeffs", to_json(s.value.coeffs)}, {"level", s.value.level}});
  return a;
}

}  // namespace fockm::io
