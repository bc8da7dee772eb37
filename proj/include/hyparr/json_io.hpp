#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hyparr/obstruction.hpp"

namespace hyparr {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline Json index_list(IndexMask m) { return Json(one_based(m)); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw Error(ErrorKind::ParseError, "rational must be a string \"p/q\" or an integer, got " + j.dump());
}

inline RatVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of rationals");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t dim_field(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() == 0)
    throw Error(ErrorKind::ParseError, "'dim' must be a positive integer");
  return d.get<std::size_t>();
}

inline std::vector<std::string> labels_field(const Json& j, std::size_t n) {
  if (!j.contains("labels")) return default_labels(n);
  std::vector<std::string> labels;
  for (const auto& l : j.at("labels")) {
    if (!l.is_string()) throw Error(ErrorKind::ParseError, "labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  if (labels.size() != n) throw Error(ErrorKind::ParseError, "label count differs from form count");
  return labels;
}

}  // namespace detail

/// {"dim": l, "forms": [["1","0"], ...], "labels": ["H1", ...]}; not validated.
inline Arrangement arrangement_from_json(const Json& j) {
  const std::size_t dim = detail::dim_field(j);
  const Json& forms = detail::field(j, "forms");
  if (!forms.is_array()) throw Error(ErrorKind::ParseError, "'forms' must be an array");
  std::vector<RatVector> rows;
  for (const auto& f : forms) rows.push_back(vector_from_json(f));
  auto labels = detail::labels_field(j, rows.size());
  return make_arrangement(dim, std::move(rows), std::move(labels));
}

inline Json to_json(const Arrangement& a) {
  Json out;
  out["dim"] = a.dim;
  Json forms = Json::array();
  Json labels = Json::array();
  for (const auto& h : a.hyperplanes) {
    forms.push_back(to_json(h.form));
    labels.push_back(h.label);
  }
  out["forms"] = std::move(forms);
  out["labels"] = std::move(labels);
  return out;
}

/// Affine format: the arrangement format plus "constants": ["c1", ...].
inline AffineArrangement affine_from_json(const Json& j) {
  AffineArrangement b;
  b.dim = detail::dim_field(j);
  const Json& forms = detail::field(j, "forms");
  const Json& constants = detail::field(j, "constants");
  if (!forms.is_array() || !constants.is_array() || forms.size() != constants.size())
    throw Error(ErrorKind::ParseError, "'forms' and 'constants' must be arrays of equal length");
  auto labels = detail::labels_field(j, forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i)
    b.hyperplanes.push_back({vector_from_json(forms[i]), rational_from_json(constants[i]), labels[i]});
  return b;
}

inline Json to_json(const AffineArrangement& b) {
  Json out;
  out["dim"] = b.dim;
  Json forms = Json::array(), constants = Json::array(), labels = Json::array();
  for (const auto& h : b.hyperplanes) {
    forms.push_back(to_json(h.linear));
    constants.push_back(to_string(h.constant));
    labels.push_back(h.label);
  }
  out["forms"] = std::move(forms);
  out["constants"] = std::move(constants);
  out["labels"] = std::move(labels);
  return out;
}

inline Json to_json(const FeasibilityResult& r) {
  Json out;
  if (r.feasible())
    out["witness"] = to_json(r.witness());
  else
    out["dual"] = to_json(r.dual());
  return out;
}

inline Json to_json(const Chamber& c) {
  Json out;
  out["signs"] = c.signs.str();
  out["witness"] = to_json(c.witness);
  out["walls"] = index_list(c.walls);
  return out;
}

inline Json to_json(const FlowPath& p) {
  Json out;
  Json path = Json::array();
  for (const auto& c : p.chambers) path.push_back(c.signs.str());
  Json crossed = Json::array();
  for (auto i : p.crossed) crossed.push_back(i + 1);
  out["path"] = std::move(path);
  out["crossed"] = std::move(crossed);
  return out;
}

inline Json to_json(const ComplexSamplePoint& p) {
  Json out;
  out["real"] = to_json(p.real);
  out["imag"] = to_json(p.imag);
  out["near"] = index_list(p.near);
  out["delta"] = p.delta ? Json(to_string(*p.delta)) : Json(nullptr);
  return out;
}

/// 64-bit FNV-1a of the raw input bytes, as "fnv1a64:<hex>".
inline std::string input_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace hyparr
