#include "tritcert/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "tritcert/error.hpp"

namespace tritcert {

namespace {

Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError("expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

std::vector<int> int_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::string> name_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back(std::to_string(v.get<long long>()));
    } else {
      throw ParseError(std::string(what) + " entries must be names");
    }
  }
  return out;
}

int vertex_ref(const Json& j, const std::vector<std::string>& names, const char* what) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == j.get<std::string>()) return static_cast<int>(i);
    }
  }
  throw ParseError(std::string("unknown ") + what + " " + j.dump());
}

// Semantic validation failures inside a parse are reported as parse errors.
template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json rational_to_json(const Rational& r) {
  return {{"num", big_to_json(numerator(r))}, {"den", big_to_json(denominator(r))}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    const BigInt den = big_from_json(field(j, "den"));
    if (den == 0) throw ParseError("zero denominator");
    return Rational(big_from_json(field(j, "num")), den);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return Rational(big_from_json(j));
}

Json table_to_json(const FunctionTable& f) {
  Json values = Json::array();
  for (Trit v : f.values()) values.push_back(static_cast<int>(v));
  return {{"n", f.arity()}, {"values", values}, {"folded", is_folded(f)}};
}

FunctionTable table_from_json(const Json& j) {
  return guarded("function table", [&] {
    const int n = int_field(j, "n");
    check_arity(n);
    std::vector<Trit> values;
    for (int v : int_array(field(j, "values"), "values")) {
      if (v < 0 || v > 2) throw ParseError("table values must lie in {0, 1, 2}");
      values.push_back(static_cast<Trit>(v));
    }
    bool folded = false;
    if (j.contains("folded")) {
      if (!j.at("folded").is_boolean()) throw ParseError("'folded' must be a boolean");
      folded = j.at("folded").get<bool>();
    }
    return FunctionTable(n, std::move(values), folded);
  });
}

Json spectrum_to_json(const FourierSpectrum& spec) {
  Json out = Json::array();
  for (Index a = 0; a < spec.size(); ++a) out.push_back({a, spec[a].real(), spec[a].imag()});
  return out;
}

Json csp_to_json(const CspInstance& instance) {
  Json vars = Json::array();
  for (const auto& v : instance.variables()) {
    if (v.domain == 3) {
      vars.push_back(v.name);
    } else {
      vars.push_back({{"name", v.name}, {"domain", v.domain}});
    }
  }
  Json constraints = Json::array();
  for (const auto& c : instance.constraints()) {
    constraints.push_back({{"kind", std::string(kind_name(c.predicate.kind))},
                           {"params", c.predicate.params},
                           {"vars", c.vars},
                           {"weight", rational_to_json(c.weight)}});
  }
  return {{"domain", 3}, {"vars", vars}, {"constraints", constraints}};
}

CspInstance csp_from_json(const Json& j) {
  return guarded("csp instance", [&] {
    int domain = 3;
    if (j.contains("domain")) domain = int_field(j, "domain");
    std::vector<Variable> vars;
    std::vector<std::string> names;
    for (const auto& v : array_field(j, "vars")) {
      if (v.is_string()) {
        vars.push_back({v.get<std::string>(), domain});
      } else if (v.is_object()) {
        const Json& name = field(v, "name");
        if (!name.is_string()) throw ParseError("variable name must be a string");
        vars.push_back({name.get<std::string>(), v.contains("domain") ? int_field(v, "domain") : domain});
      } else {
        throw ParseError("variables must be names or {name, domain} objects");
      }
      names.push_back(vars.back().name);
    }
    std::vector<Constraint> constraints;
    for (const auto& c : array_field(j, "constraints")) {
      const Json& kind = field(c, "kind");
      if (!kind.is_string()) throw ParseError("constraint kind must be a string");
      Predicate p{parse_kind(kind.get<std::string>()), {}};
      if (c.contains("params")) p.params = int_array(c.at("params"), "params");
      std::vector<int> refs;
      for (const auto& v : array_field(c, "vars")) refs.push_back(vertex_ref(v, names, "variable"));
      Rational w = c.contains("weight") ? rational_from_json(c.at("weight")) : Rational(0);
      constraints.push_back({std::move(p), std::move(refs), std::move(w)});
    }
    return CspInstance(std::move(vars), std::move(constraints));
  });
}

Json labelcover_to_json(const LabelCoverInstance& lc) {
  Json edges = Json::array();
  for (const auto& e : lc.edges()) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", rational_to_json(e.weight)}, {"pi", e.preimages}});
  }
  return {{"K", lc.K()}, {"d", lc.d()}, {"U", lc.left()}, {"V", lc.right()}, {"edges", edges}};
}

LabelCoverInstance labelcover_from_json(const Json& j) {
  return guarded("label cover instance", [&] {
    const int K = int_field(j, "K");
    const int d = int_field(j, "d");
    auto left = name_list(field(j, "U"), "U");
    auto right = name_list(field(j, "V"), "V");
    std::vector<LabelCoverEdge> edges;
    for (const auto& e : array_field(j, "edges")) {
      LabelCoverEdge edge;
      edge.u = vertex_ref(field(e, "u"), left, "left vertex");
      edge.v = vertex_ref(field(e, "v"), right, "right vertex");
      edge.weight = rational_from_json(field(e, "weight"));
      for (const auto& group : array_field(e, "pi")) edge.preimages.push_back(int_array(group, "pi group"));
      edges.push_back(std::move(edge));
    }
    return LabelCoverInstance(K, d, std::move(left), std::move(right), std::move(edges));
  });
}

Json labeling_to_json(const Labeling& l) { return {{"left", l.left}, {"right", l.right}}; }

Labeling labeling_from_json(const Json& j) {
  return guarded("labeling", [&] {
    return Labeling{int_array(field(j, "left"), "left"), int_array(field(j, "right"), "right")};
  });
}

Json tables_to_json(const LongCodeAssignment& t) {
  Json f = Json::array(), g = Json::array();
  for (const auto& table : t.f) f.push_back(table_to_json(table));
  for (const auto& table : t.g) g.push_back(table_to_json(table));
  return {{"f", f}, {"g", g}};
}

LongCodeAssignment tables_from_json(const Json& j) {
  LongCodeAssignment out;
  for (const auto& t : array_field(j, "f")) out.f.push_back(table_from_json(t));
  for (const auto& t : array_field(j, "g")) out.g.push_back(table_from_json(t));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace tritcert
