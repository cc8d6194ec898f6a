#pragma once

#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "omlat/error.hpp"
#include "omlat/groemer.hpp"
#include "omlat/lattice.hpp"
#include "omlat/limits.hpp"
#include "omlat/measure.hpp"
#include "omlat/measure_module.hpp"
#include "omlat/numeric.hpp"
#include "omlat/symmetry.hpp"

// JSON file formats. Objects keep insertion order so output follows the
// canonical element order and is byte-stable.

namespace omlat::io {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Schema, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, path + ": " + e.what());
  }
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Schema, what);
}

inline void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  require(j.is_object(), what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || key == k;
    require(known, what + ": unknown key \"" + key + "\"");
  }
}

inline const std::string& string_at(const Json& j, const std::string& what) {
  require(j.is_string(), what + " must be a string");
  return j.get_ref<const std::string&>();
}

inline Elem element(const OrthoLattice& l, const Json& j, const std::string& what) {
  const auto& name = string_at(j, what);
  auto e = l.find(name);
  require(e.has_value(), what + ": unknown element \"" + name + "\"");
  return *e;
}

inline Rational number(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  require(j.is_string(), what + " must be an integer or a \"p/q\" string");
  return parse_rational(j.get_ref<const std::string&>());
}

}  // namespace detail

/// {"name": str, "elements": [str...], "leq": [[str, str]...],
///  "orthocomplement": {str: str}}; "name" may be omitted.
inline LatticeDescription parse_lattice(const Json& j) {
  detail::only_keys(j, {"name", "elements", "leq", "orthocomplement"}, "lattice file");
  LatticeDescription d;
  d.name = j.contains("name") ? detail::string_at(j["name"], "name") : "lattice";
  detail::require(j.contains("elements") && j["elements"].is_array(), "lattice file needs an \"elements\" array");
  for (const auto& e : j["elements"]) d.elements.push_back(detail::string_at(e, "element"));
  detail::require(j.contains("leq") && j["leq"].is_array(), "lattice file needs a \"leq\" array");
  for (const auto& p : j["leq"]) {
    detail::require(p.is_array() && p.size() == 2, "each leq entry must be a pair");
    d.leq_pairs.emplace_back(detail::string_at(p[0], "leq entry"), detail::string_at(p[1], "leq entry"));
  }
  detail::require(j.contains("orthocomplement") && j["orthocomplement"].is_object(),
                  "lattice file needs an \"orthocomplement\" object");
  for (const auto& [k, v] : j["orthocomplement"].items()) d.orthocomplement[k] = detail::string_at(v, "orthocomplement");
  return d;
}

inline OrthoLattice load_lattice(const std::string& path, const Limits& limits = kDefaultLimits) {
  return build_lattice(parse_lattice(read_json_file(path)), limits);
}

/// Exports the cover relation and the orthocomplement in canonical order.
inline Json lattice_json(const OrthoLattice& l) {
  const auto d = l.describe();
  Json j;
  j["name"] = d.name;
  j["elements"] = d.elements;
  j["leq"] = Json::array();
  for (const auto& [a, b] : d.leq_pairs) j["leq"].push_back({a, b});
  j["orthocomplement"] = Json::object();
  for (Elem x = 0; x < l.size(); ++x) j["orthocomplement"][l.name_of(x)] = l.name_of(l.ortho(x));
  return j;
}

/// {"generators": [{elem: elem, ...}, ...]}. Elements left out of a
/// generator are fixed by it.
inline std::vector<Permutation> parse_generators(const OrthoLattice& l, const Json& j) {
  detail::only_keys(j, {"generators"}, "group file");
  detail::require(j.contains("generators") && j["generators"].is_array(), "group file needs a \"generators\" array");
  std::vector<Permutation> out;
  for (const auto& g : j["generators"]) {
    detail::require(g.is_object(), "each generator must be an object");
    Permutation p = identity_permutation(l.size());
    for (const auto& [from, to] : g.items()) {
      auto x = l.find(from);
      detail::require(x.has_value(), "generator: unknown element \"" + from + "\"");
      p[*x] = detail::element(l, to, "generator image");
    }
    std::set<Elem> image(p.begin(), p.end());
    if (image.size() != p.size())
      throw Error(ErrorKind::NotAnAutomorphism, "generator " + std::to_string(out.size()) + " is not a bijection");
    out.push_back(std::move(p));
  }
  return out;
}

inline Json generators_json(const OrthoLattice& l, const std::vector<Permutation>& gens) {
  Json arr = Json::array();
  for (const auto& p : gens) {
    Json g = Json::object();
    for (Elem x = 0; x < l.size(); ++x)
      if (p[x] != x) g[l.name_of(x)] = l.name_of(p[x]);
    arr.push_back(g);
  }
  return arr;
}

/// {"values": {elem: "p/q" or int}}.
inline PartialMeasure parse_partial_measure(const OrthoLattice& l, const Json& j, const Domain& domain) {
  detail::only_keys(j, {"values"}, "partial measure file");
  detail::require(j.contains("values") && j["values"].is_object(), "partial measure file needs a \"values\" object");
  PartialMeasure p{domain, {}};
  for (const auto& [k, v] : j["values"].items()) {
    auto x = l.find(k);
    detail::require(x.has_value(), "values: unknown element \"" + k + "\"");
    p.values[*x] = detail::number(v, "value of " + k);
  }
  return p;
}

/// {"members": [elem...]}.
inline std::vector<Elem> parse_members(const OrthoLattice& l, const Json& j) {
  detail::only_keys(j, {"members"}, "generating set file");
  detail::require(j.contains("members") && j["members"].is_array(), "generating set file needs a \"members\" array");
  std::vector<Elem> out;
  for (const auto& m : j["members"]) out.push_back(detail::element(l, m, "member"));
  return out;
}

/// "z", "q" or "z/<m>", case-insensitive.
inline Domain parse_domain(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "z") return Domain::integers();
  if (s == "q") return Domain::rationals();
  if (s.rfind("z/", 0) == 0) {
    Integer m = parse_integer(s.substr(2));
    detail::require(m >= 1, "modulus must be positive");
    return Domain::modulo(m);
  }
  throw Error(ErrorKind::Schema, "unknown domain \"" + s + "\"; expected z, q or z/<m>");
}

/// Integers as JSON numbers when they fit, everything else as "p/q".
inline Json number_json(const Rational& v) {
  if (is_integral(v)) {
    const Integer n = numerator(v);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return static_cast<long long>(n);
  }
  return to_string(v);
}

inline Json vector_json(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(number_json(x));
  return arr;
}

inline Json values_json(const OrthoLattice& l, const std::vector<Rational>& values) {
  Json j = Json::object();
  for (Elem x = 0; x < l.size(); ++x) j[l.name_of(x)] = number_json(values[x]);
  return j;
}

/// {"domain": "Z"|"Q"|"Z/m", "values": {elem: value}}.
inline Json measure_json(const OrthoLattice& l, const Measure& m) {
  Json j;
  j["domain"] = m.domain.label();
  j["values"] = values_json(l, m.values);
  return j;
}

/// {"rank": r, "torsion": [d...]}.
inline Json module_json(const MeasureModule& m) {
  Json j;
  j["rank"] = m.rank();
  j["torsion"] = Json::array();
  for (const auto& d : m.torsion()) j["torsion"].push_back(number_json(Rational(d)));
  return j;
}

}  // namespace omlat::io
