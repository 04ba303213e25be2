#ifndef BIGBRACKET_IO_HPP
#define BIGBRACKET_IO_HPP

// JSON documents for spaces, structure packages and Manin triples.
// Coefficients are always strings ("p/q" or an integer).

#include <fstream>

#include <json.hpp>

#include "bigbracket/manin.hpp"

namespace bigbracket {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require_key(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing key '" + key + "'");
  return *it;
}

inline std::string require_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

inline std::size_t require_generator(const GradedSpace& s, const Json& j, const std::string& where) {
  std::string name = require_string(j, where);
  auto i = s.find(name);
  if (!i) throw InputError(where + ": unknown generator '" + name + "'");
  return *i;
}

}  // namespace detail

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// --- spaces ----------------------------------------------------------------

inline Json space_to_json(const GradedSpace& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  return {{"field", "rational"}, {"generators", gens}};
}

inline SpacePtr space_from_json(const Json& j) {
  const std::string where = "space";
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  if (j.contains("field") && j["field"] != "rational")
    throw InputError(where + ": only the rational field is supported");
  const Json& gens = detail::require_key(j, "generators", where);
  if (!gens.is_array()) throw InputError(where + ": 'generators' must be an array");
  std::vector<Generator> out;
  for (const auto& g : gens) {
    std::string name = detail::require_string(detail::require_key(g, "name", where + " generator"), where + " name");
    const Json& deg = detail::require_key(g, "degree", where + " generator");
    if (!deg.is_number_integer()) throw InputError(where + ": degree of '" + name + "' must be an integer");
    out.push_back({name, deg.get<int>()});
  }
  return make_space(std::move(out));
}

// --- elements as term lists ---------------------------------------------------

inline Json terms_to_json(const Element& a) {
  Json out = Json::array();
  const GradedSpace& s = a.graded_space();
  for (const auto& [m, c] : a.terms()) {
    Json duals = Json::array(), primals = Json::array();
    for (auto g : factors(s, m)) (g.kind == Kind::dual ? duals : primals).push_back(s.generator(g.index).name);
    out.push_back({{"duals", duals}, {"primals", primals}, {"coeff", format_scalar(c)}});
  }
  return out;
}

/// Reads terms in written order (duals, then primals) and canonicalizes.
inline Element terms_from_json(const SpacePtr& s, const Json& j, const std::string& where,
                               std::optional<Bidegree> expect = std::nullopt) {
  if (!j.is_array()) throw InputError(where + ": expected an array of terms");
  Element out(s);
  for (const auto& t : j) {
    std::vector<GeneratorRef> word;
    const Json& duals = detail::require_key(t, "duals", where);
    const Json& primals = detail::require_key(t, "primals", where);
    if (!duals.is_array() || !primals.is_array()) throw InputError(where + ": factor lists must be arrays");
    for (const auto& d : duals) word.push_back(dual(detail::require_generator(*s, d, where)));
    for (const auto& p : primals) word.push_back(primal(detail::require_generator(*s, p, where)));
    if (expect && (static_cast<int>(duals.size()) != expect->first ||
                   static_cast<int>(primals.size()) != expect->second))
      throw InputError(where + ": term has " + std::to_string(duals.size()) + " duals and " +
                       std::to_string(primals.size()) + " primals");
    Scalar c = parse_scalar(detail::require_string(detail::require_key(t, "coeff", where), where + " coeff"));
    if (c == 0) throw InputError(where + ": coefficients must be nonzero");
    out += canonicalize(s, word, c);
  }
  return out;
}

// --- packages ------------------------------------------------------------------

inline Json package_to_json(const StructurePackage& p) {
  Json comps = Json::object();
  for (const auto& [bd, part] : p.components()) comps[component_label(bd.first, bd.second)] = terms_to_json(part);
  return {{"components", comps}};
}

inline StructurePackage package_from_json(const SpacePtr& s, const Json& j) {
  const Json& comps = detail::require_key(j, "components", "package");
  if (!comps.is_object()) throw InputError("package: 'components' must be an object");
  StructurePackage p(s);
  for (const auto& [label, terms] : comps.items()) {
    Bidegree bd = parse_component_label(label);
    p.add(bd.first, bd.second, terms_from_json(s, terms, "package component " + label, bd));
  }
  return p;
}

// --- triples -------------------------------------------------------------------

inline Json triple_to_json(const TripleStructure& t) {
  const DoubleSpace& d = *t.space;
  Json lambda = Json::object();
  for (const auto& [n, mm] : t.brackets) {
    Json rows = Json::array();
    for (const auto& [word, value] : mm.table) {
      Json args = Json::array(), vals = Json::array();
      for (auto g : factors(*d.w, word)) args.push_back(d.name(g.index));
      for (const auto& [m, c] : value.terms())
        vals.push_back({{"gen", d.name(factors(*d.w, m).front().index)}, {"coeff", format_scalar(c)}});
      rows.push_back({{"args", args}, {"value", vals}});
    }
    lambda[std::to_string(n)] = rows;
  }
  return {{"base", space_to_json(*d.base)}, {"lambda", lambda}};
}

inline TripleStructure triple_from_json(const Json& j) {
  SpacePtr base = space_from_json(detail::require_key(j, "base", "triple"));
  auto d = make_double(base);
  TripleStructure t{d, {}};
  const Json& lambda = detail::require_key(j, "lambda", "triple");
  if (!lambda.is_object()) throw InputError("triple: 'lambda' must be an object");
  auto gen = [&](const Json& x, const std::string& where) {
    std::string name = detail::require_string(x, where);
    auto i = d->find(name);
    if (!i) throw InputError(where + ": unknown generator '" + name + "'");
    return *i;
  };
  for (const auto& [key, rows] : lambda.items()) {
    unsigned n = 0;
    try {
      std::size_t used = 0;
      int v = std::stoi(key, &used);
      if (used != key.size() || v < 1) throw std::invalid_argument(key);
      n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw InputError("triple: arity key '" + key + "' is not a positive integer");
    }
    if (!rows.is_array()) throw InputError("triple: lambda." + key + " must be an array");
    MultiMap mm{d->w, n, {}};
    for (const auto& row : rows) {
      const std::string where = "triple lambda." + key;
      const Json& args = detail::require_key(row, "args", where);
      if (!args.is_array() || args.size() != n) throw InputError(where + ": 'args' must list " + key + " generators");
      std::vector<GeneratorRef> word;
      for (const auto& a : args) word.push_back(primal(gen(a, where)));
      Element w = canonicalize(d->w, word);
      const Json& vals = detail::require_key(row, "value", where);
      if (!vals.is_array()) throw InputError(where + ": 'value' must be an array");
      Element value(d->w);
      for (const auto& v : vals) {
        Scalar c = parse_scalar(detail::require_string(detail::require_key(v, "coeff", where), where + " coeff"));
        value += Element::generator(d->w, primal(gen(detail::require_key(v, "gen", where), where)), c);
      }
      if (w.is_zero()) {
        if (!value.is_zero()) throw InputError(where + ": nonzero value on a vanishing argument word");
        continue;
      }
      const auto& [m, sign] = *w.terms().begin();
      auto [it, inserted] = mm.table.emplace(m, value * sign);
      if (!inserted) throw InputError(where + ": argument word listed twice");
      if (it->second.is_zero()) mm.table.erase(it);
    }
    if (!mm.table.empty()) t.brackets.emplace(n, std::move(mm));
  }
  return t;
}

// --- verdicts ------------------------------------------------------------------

inline Json verdict_to_json(const Verdict& v) {
  Json defects = Json::object();
  for (const auto& [label, e] : v.defects) defects[label] = terms_to_json(e);
  return {{"passed", v.passed()}, {"defects", defects}, {"notes", v.notes}};
}

}  // namespace bigbracket

#endif  // BIGBRACKET_IO_HPP
