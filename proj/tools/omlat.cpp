// omlat: batch front end for the finite ortholattice measure toolkit.
//
// Exit status: 0 success, 1 mathematical negative (the report is still
// printed), 2 input or schema error, 3 resource cap.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "omlat/omlat.hpp"

namespace {

using omlat::Elem;
using omlat::Error;
using omlat::ErrorKind;
using omlat::io::Json;

struct RunConfig {
  std::string command;
  std::string lattice_path;
  std::string builtin;
  std::string group_path;
  bool full_aut = false;
  std::string domain = "q";
  std::string format = "json";
  std::size_t max_elements = omlat::kDefaultLimits.max_elements;
  std::size_t max_group = omlat::kDefaultLimits.max_group;
  std::size_t max_dimension = omlat::kDefaultLimits.max_dimension;
  std::string values_path;
  std::string generating_path;
  std::string mode;
  std::string csv_path;
  int range_lo = -2;
  int range_hi = 2;

  omlat::Limits limits() const { return {max_elements, max_group, max_dimension}; }
};

// 64-bit FNV-1a over the input files, in argument order.
class Digest {
 public:
  void add(const std::string& bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
    h_ ^= 0xff;
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    std::ostringstream out;
    out << "fnv1a64:" << std::hex;
    out.width(16);
    out.fill('0');
    out << h_;
    return out.str();
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Schema, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_file(const std::string& path, Digest& digest) {
  const auto bytes = slurp(path);
  digest.add(bytes);
  try {
    return Json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

unsigned to_unsigned(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Schema, "expected a non-negative integer, got \"" + s + "\"");
  }
}

// boolean:N, mo:N, benzene, subspace:Q:N:C1,C2,...
omlat::OrthoLattice builtin_lattice(const std::string& spec, const omlat::Limits& limits) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw Error(ErrorKind::Schema, "empty --builtin");
  const auto& kind = parts[0];
  if (kind == "boolean" && parts.size() == 2) return omlat::boolean(to_unsigned(parts[1]), limits);
  if (kind == "mo" && parts.size() == 2) return omlat::mo(to_unsigned(parts[1]), limits);
  if (kind == "benzene" && parts.size() == 1) return omlat::benzene();
  if (kind == "subspace" && parts.size() == 4) {
    std::vector<unsigned> form;
    for (const auto& c : split(parts[3], ',')) form.push_back(to_unsigned(c));
    return omlat::subspace_lattice(to_unsigned(parts[1]), to_unsigned(parts[2]), form, limits);
  }
  throw Error(ErrorKind::Schema, "unknown --builtin \"" + spec + "\"; expected boolean:N, mo:N, benzene or subspace:Q:N:C1,..");
}

struct Context {
  const RunConfig& cfg;
  Digest digest;
  std::optional<omlat::OrthoLattice> lattice;

  const omlat::OrthoLattice& lat() const { return *lattice; }

  void load() {
    if (cfg.builtin.empty() == cfg.lattice_path.empty())
      throw Error(ErrorKind::Schema, "give exactly one of a lattice file or --builtin");
    if (!cfg.builtin.empty()) {
      digest.add("builtin:" + cfg.builtin);
      lattice = builtin_lattice(cfg.builtin, cfg.limits());
    } else {
      lattice = omlat::build_lattice(omlat::io::parse_lattice(parse_file(cfg.lattice_path, digest)), cfg.limits());
    }
  }

  bool has_group() const { return cfg.full_aut || !cfg.group_path.empty(); }

  omlat::GroupAction group() {
    if (cfg.full_aut && !cfg.group_path.empty()) throw Error(ErrorKind::Schema, "--group and --full-aut are exclusive");
    if (!cfg.group_path.empty()) {
      auto gens = omlat::io::parse_generators(lat(), parse_file(cfg.group_path, digest));
      return omlat::close_group(lat(), std::move(gens), cfg.limits());
    }
    if (cfg.full_aut) return omlat::automorphism_group(lat(), cfg.limits());
    return omlat::trivial_group(lat());
  }
};

Json names_json(const omlat::OrthoLattice& l, const std::vector<Elem>& xs) {
  Json arr = Json::array();
  for (Elem x : xs) arr.push_back(l.name_of(x));
  return arr;
}

// Each command fills `result` and returns the exit status.
int cmd_check(Context& ctx, Json& result) {
  const auto& l = ctx.lat();
  const auto ortho = omlat::verify_ortho(l);
  const auto om = omlat::is_orthomodular(l);
  const auto dist = omlat::is_distributive(l);
  const auto atomistic = omlat::is_atomistic(l);
  result["elements"] = l.size();
  result["orthocomplemented"] = ortho.ok();
  if (!ortho.ok()) result["violations"] = ortho.violations;
  result["orthomodular"] = om.holds;
  if (!om.holds) result["orthomodular_witness"] = names_json(l, {om.witness->first, om.witness->second});
  result["distributive"] = dist.holds;
  if (!dist.holds) {
    const auto [a, b, c] = *dist.witness;
    result["distributive_witness"] = names_json(l, {a, b, c});
  }
  result["boolean"] = omlat::is_boolean(l);
  result["atomistic"] = atomistic.holds;
  result["atoms"] = names_json(l, omlat::atoms(l));
  return ortho.ok() && om.holds ? 0 : 1;
}

int cmd_aut(Context& ctx, Json& result) {
  const auto g = ctx.has_group() ? ctx.group() : omlat::automorphism_group(ctx.lat(), ctx.cfg.limits());
  result["order"] = g.order();
  result["generators"] = omlat::io::generators_json(ctx.lat(), g.generators());
  Json orbs = Json::array();
  for (const auto& o : omlat::orbits(g)) orbs.push_back(names_json(ctx.lat(), o.members));
  result["orbits"] = orbs;
  return 0;
}

int cmd_module(Context& ctx, Json& result) {
  const auto m = ctx.has_group() ? omlat::coinvariants(ctx.lat(), ctx.group()) : omlat::measure_module(ctx.lat());
  result = omlat::io::module_json(m);
  return 0;
}

Json basis_json(const omlat::OrthoLattice& l, const omlat::Domain& d, const omlat::MeasureBasis& b) {
  Json j;
  j["domain"] = d.label();
  Json measures = Json::array();
  for (const auto& m : b.measures) measures.push_back(omlat::io::values_json(l, m.values));
  j["basis"] = measures;
  Json orders = Json::array();
  for (const auto& o : b.orders) orders.push_back(omlat::io::number_json(omlat::Rational(o)));
  j["orders"] = orders;
  return j;
}

int cmd_measures(Context& ctx, Json& result, bool invariant) {
  const auto d = omlat::io::parse_domain(ctx.cfg.domain);
  if (invariant || ctx.has_group()) {
    const auto g = ctx.has_group() ? ctx.group() : omlat::automorphism_group(ctx.lat(), ctx.cfg.limits());
    result = basis_json(ctx.lat(), d, omlat::measure_basis(ctx.lat(), d, g));
    result["group_order"] = g.order();
  } else {
    result = basis_json(ctx.lat(), d, omlat::measure_basis(ctx.lat(), d));
  }
  return 0;
}

Json rays_json(const std::vector<omlat::RatVector>& rays) {
  Json arr = Json::array();
  for (const auto& r : rays) arr.push_back(omlat::io::vector_json(r));
  return arr;
}

int cmd_cone(Context& ctx, Json& result) {
  const auto c = ctx.has_group() ? omlat::positive_cone(ctx.lat(), ctx.group(), ctx.cfg.limits())
                                 : omlat::positive_cone(ctx.lat(), ctx.cfg.limits());
  result["dimension"] = c.cone.dimension;
  result["rays"] = rays_json(c.cone.rays);
  result["lineality"] = rays_json(c.cone.lineality);
  Json measures = Json::array();
  for (const auto& r : c.cone.rays)
    measures.push_back(omlat::io::values_json(ctx.lat(), omlat::measure_at(c.basis, ctx.lat().size(), r).values));
  result["ray_measures"] = measures;
  return 0;
}

void write_csv(const std::string& path, const omlat::OrthoLattice& l, const omlat::StatePolytope& p) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Schema, "cannot write " + path);
  for (Elem x = 0; x < l.size(); ++x) out << (x ? "," : "") << '"' << l.name_of(x) << '"';
  out << '\n';
  for (const auto& v : p.vertices) {
    for (Elem x = 0; x < l.size(); ++x) out << (x ? "," : "") << omlat::to_string(v.measure[x]);
    out << '\n';
  }
}

int cmd_states(Context& ctx, Json& result) {
  const auto p = ctx.has_group() ? omlat::state_polytope(ctx.lat(), ctx.group(), ctx.cfg.limits())
                                 : omlat::state_polytope(ctx.lat(), ctx.cfg.limits());
  result["rays"] = rays_json(p.cone.cone.rays);
  Json verts = Json::array();
  for (const auto& v : p.vertices) {
    Json j;
    j["coords"] = omlat::io::vector_json(v.coords);
    j["values"] = omlat::io::values_json(ctx.lat(), v.measure.values);
    verts.push_back(j);
  }
  result["vertices"] = verts;
  if (!ctx.cfg.csv_path.empty()) write_csv(ctx.cfg.csv_path, ctx.lat(), p);
  return 0;
}

int cmd_extend(Context& ctx, Json& result) {
  if (ctx.cfg.values_path.empty() || ctx.cfg.generating_path.empty())
    throw Error(ErrorKind::Schema, "extend needs --values and --generating");
  const auto d = omlat::io::parse_domain(ctx.cfg.domain);
  const auto nu = omlat::io::parse_partial_measure(ctx.lat(), parse_file(ctx.cfg.values_path, ctx.digest), d);
  const auto b = omlat::io::parse_members(ctx.lat(), parse_file(ctx.cfg.generating_path, ctx.digest));
  std::string mode = ctx.cfg.mode;
  if (mode.empty()) mode = ctx.has_group() ? "orthogonal" : "classical";
  omlat::Measure m;
  if (mode == "classical") {
    m = omlat::classical_groemer_extend(ctx.lat(), b, nu);
  } else if (mode == "orthogonal") {
    m = omlat::orth_groemer_extend(ctx.lat(), ctx.group(), b, nu);
  } else {
    throw Error(ErrorKind::Schema, "--mode must be classical or orthogonal");
  }
  result["mode"] = mode;
  result["measure"] = omlat::io::measure_json(ctx.lat(), m);
  return 0;
}

int cmd_boolean_check(Context& ctx, Json& result) {
  const auto& l = ctx.lat();
  const auto ids = omlat::check_indicator_identities(l);
  result["identities"] = ids.holds;
  if (!ids.holds) {
    result["identity"] = ids.witness->identity;
    result["witness"] = names_json(l, ids.witness->elements);
  }
  bool round_trip = true;
  for (const auto& m : omlat::measure_basis(l, omlat::Domain::rationals()).measures) {
    const auto f = omlat::functional_from_measure(l, m);
    round_trip = round_trip && omlat::measure_from_functional(l, f) == m;
    for (Elem x = 0; x < l.size(); ++x) round_trip = round_trip && f(omlat::indicator(l, x)) == m[x];
  }
  result["round_trip"] = round_trip;
  bool agree = true;
  if (ctx.has_group()) {
    const auto g = ctx.group();
    for (const auto& m : omlat::measure_basis(l, omlat::Domain::rationals()).measures)
      agree = agree && omlat::invariant_functional_check(l, g, m).agree();
    result["invariance_agrees"] = agree;
  }
  return ids.holds && round_trip && agree ? 0 : 1;
}

int cmd_oracle(Context& ctx, Json& result) {
  const auto d = omlat::io::parse_domain(ctx.cfg.domain);
  if (ctx.cfg.range_lo > ctx.cfg.range_hi) throw Error(ErrorKind::Schema, "--range needs lo <= hi");
  std::vector<omlat::Rational> range;
  for (int v = ctx.cfg.range_lo; v <= ctx.cfg.range_hi; ++v) range.emplace_back(v);
  const auto all = omlat::brute_force_measures(ctx.lat(), range, d);
  result["domain"] = d.label();
  result["range"] = {ctx.cfg.range_lo, ctx.cfg.range_hi};
  result["count"] = all.size();
  Json measures = Json::array();
  for (const auto& m : all) measures.push_back(omlat::io::values_json(ctx.lat(), m.values));
  result["measures"] = measures;
  return 0;
}

int cmd_export(Context& ctx, Json& result) {
  result = omlat::io::lattice_json(ctx.lat());
  return 0;
}

int exit_status(ErrorKind k) {
  if (omlat::is_resource_cap(k)) return 3;
  switch (k) {
    case ErrorKind::Schema:
    case ErrorKind::InvalidDescription:
    case ErrorKind::DomainMismatch:
      return 2;
    default:
      return 1;
  }
}

void print_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      print_text(value, out, indent + "  ");
    } else if (value.is_array() && !value.empty() && (value[0].is_object() || value[0].is_array())) {
      out << indent << key << ": " << value.size() << " entries\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i].is_object()) {
          out << indent << "  [" << i << "]\n";
          print_text(value[i], out, indent + "    ");
        } else {
          out << indent << "  [" << i << "] " << value[i].dump() << '\n';
        }
      }
    } else {
      out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

int run(const RunConfig& cfg) {
  Context ctx{cfg, {}, std::nullopt};
  Json report;
  report["tool"] = "omlat";
  report["version"] = omlat::kVersion;
  report["command"] = cfg.command;
  int status = 0;
  try {
    if (cfg.format != "json" && cfg.format != "text") throw Error(ErrorKind::Schema, "--format must be json or text");
    ctx.load();
    report["lattice"] = ctx.lat().name();
    Json result = Json::object();
    const auto& c = cfg.command;
    if (c == "check") status = cmd_check(ctx, result);
    else if (c == "aut") status = cmd_aut(ctx, result);
    else if (c == "module") status = cmd_module(ctx, result);
    else if (c == "measures") status = cmd_measures(ctx, result, false);
    else if (c == "invariant-measures") status = cmd_measures(ctx, result, true);
    else if (c == "cone") status = cmd_cone(ctx, result);
    else if (c == "states") status = cmd_states(ctx, result);
    else if (c == "extend") status = cmd_extend(ctx, result);
    else if (c == "boolean-check") status = cmd_boolean_check(ctx, result);
    else if (c == "oracle") status = cmd_oracle(ctx, result);
    else if (c == "export") status = cmd_export(ctx, result);
    if (c == "export" && cfg.format == "json") {
      std::cout << result.dump(2) << '\n';
      return status;
    }
    report["input_digest"] = ctx.digest.hex();
    report["result"] = result;
  } catch (const Error& e) {
    status = exit_status(e.kind());
    report["input_digest"] = ctx.digest.hex();
    Json err;
    err["kind"] = omlat::to_string(e.kind());
    err["message"] = e.what();
    if (!e.witness().empty()) err["witness"] = e.witness();
    report["error"] = err;
    std::cerr << "omlat: " << e.what() << '\n';
  }
  if (cfg.format == "text") {
    print_text(report, std::cout);
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measures, symmetries and states on finite ortholattices"};
  app.set_version_flag("--version", std::string(omlat::kVersion));
  app.require_subcommand(1);
  RunConfig cfg;

  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> commands{
      {"check", "lattice axioms and classification"},
      {"aut", "automorphism group order, generators and orbits"},
      {"module", "rank and torsion of M, or of M_G with a group"},
      {"measures", "basis of measures over --domain"},
      {"invariant-measures", "basis of G-invariant measures (full group unless --group)"},
      {"cone", "extreme rays of the positive measure cone"},
      {"states", "vertices of the state polytope"},
      {"extend", "Groemer extension from --values on --generating"},
      {"boolean-check", "indicator identities and the measure/functional bijection"},
      {"oracle", "brute-force enumeration of measures with values in --lo..--hi"},
      {"export", "write the lattice in the lattice file format"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("lattice", cfg.lattice_path, "lattice file (JSON)");
    sub->add_option("--builtin", cfg.builtin, "boolean:N, mo:N, benzene or subspace:Q:N:C1,..");
    sub->add_option("--group", cfg.group_path, "group file (JSON)");
    sub->add_flag("--full-aut", cfg.full_aut, "use the full automorphism group");
    sub->add_option("--domain", cfg.domain, "z, q or z/<m>");
    sub->add_option("--format", cfg.format, "json or text");
    sub->add_option("--max-elements", cfg.max_elements, "element cap");
    sub->add_option("--max-group", cfg.max_group, "group order cap");
    sub->add_option("--max-dimension", cfg.max_dimension, "cone dimension cap");
    if (std::string(c.name) == "extend") {
      sub->add_option("--values", cfg.values_path, "partial measure file (JSON)");
      sub->add_option("--generating", cfg.generating_path, "generating set file (JSON)");
      sub->add_option("--mode", cfg.mode, "classical or orthogonal");
    }
    if (std::string(c.name) == "states") sub->add_option("--csv", cfg.csv_path, "also write vertices as CSV");
    if (std::string(c.name) == "oracle") {
      sub->add_option("--lo", cfg.range_lo, "least value");
      sub->add_option("--hi", cfg.range_hi, "greatest value");
    }
    sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run(cfg);
}
