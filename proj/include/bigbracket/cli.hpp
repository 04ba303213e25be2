#ifndef BIGBRACKET_CLI_HPP
#define BIGBRACKET_CLI_HPP

// Command-line front end. run() takes the argument vector (without the
// program name) and returns the exit code: 0 pass, 1 fail, 2 input error.

#include <CLI11.hpp>
#include <ostream>

#include "bigbracket/expr.hpp"
#include "bigbracket/geom.hpp"
#include "bigbracket/io.hpp"
#include "bigbracket/random.hpp"

namespace bigbracket {

namespace cli {

enum Exit { pass = 0, fail = 1, input_error = 2 };

inline std::string bidegree_text(const std::optional<std::pair<int, int>>& b) {
  if (!b) return "mixed";
  return "(" + std::to_string(b->first) + "," + std::to_string(b->second) + ")";
}

inline std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "mixed"; }

/// Space of an expression given without -s: ungraded, generators named in
/// order of first appearance.
inline SpacePtr infer_space(std::string_view src) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < src.size();) {
    char c = src[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string name(src.substr(i, j - i));
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
    } else {
      ++i;
    }
  }
  return std::make_shared<const GradedSpace>(GradedSpace::ungraded(names));
}

inline void print_verdict_lines(std::ostream& out, const Verdict& v) {
  for (const auto& [label, e] : v.defects) out << "FAIL " << label << ": " << print_element(e) << "\n";
  for (const auto& n : v.notes) out << "note: " << n << "\n";
}

/// Bidegrees of [Q, Q] that the package's components can reach.
inline std::set<Bidegree> reachable_equations(const StructurePackage& p) {
  std::set<Bidegree> out;
  for (const auto& [a, x] : p.components())
    for (const auto& [b, y] : p.components())
      if (a.first + b.first >= 1 && a.second + b.second >= 1)
        out.insert({a.first + b.first - 1, a.second + b.second - 1});
  return out;
}

struct Context {
  std::ostream& out;
  bool json = false;
};

inline int finish(Context& ctx, Json j, const Verdict* v, const std::string& text) {
  if (ctx.json) {
    if (v) j["verdict"] = verdict_to_json(*v);
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << text;
  }
  return v && !v->passed() ? fail : pass;
}

inline int cmd_eval(Context& ctx, const std::string& space_path, const std::string& src) {
  SpacePtr s = space_path.empty() ? infer_space(src) : space_from_json(read_json_file(space_path));
  Element e = parse_expr(src, s);
  Degrees d = degrees(e);
  std::ostringstream os;
  std::string canonical = print_element(e);
  os << canonical << "\n";
  Json j{{"canonical", canonical}, {"terms", terms_to_json(e)}};
  if (d.any) {
    os << "degrees: any (zero element)\n";
    j["degrees"] = "any";
  } else {
    os << "internal degree: " << opt_text(d.internal) << "\n";
    os << "external degree: " << opt_text(d.external) << "\n";
    os << "total degree: " << opt_text(d.total) << "\n";
    os << "bidegree: " << bidegree_text(d.bidegree) << "\n";
    auto jopt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
    j["degrees"] = {{"internal", jopt(d.internal)},
                    {"external", jopt(d.external)},
                    {"total", jopt(d.total)},
                    {"bidegree", d.bidegree ? Json::array({d.bidegree->first, d.bidegree->second}) : Json(nullptr)}};
  }
  return finish(ctx, j, nullptr, os.str());
}

inline StructurePackage load_package(const std::string& space_path, const std::string& package_path) {
  SpacePtr s = space_from_json(read_json_file(space_path));
  return package_from_json(s, read_json_file(package_path));
}

inline int cmd_check(Context& ctx, const StructurePackage& p, const std::string& kind_name) {
  StructureKind kind = parse_kind(kind_name);
  for (const auto& [bd, part] : p.components())
    if (!kind_allows(kind, bd.first, bd.second))
      throw InputError("component " + component_label(bd.first, bd.second) + " is not allowed for kind '" +
                       kind_name + "'");
  Verdict v = verify(kind, p);
  std::ostringstream os;
  os << "kind: " << kind_name << "\n";
  auto comps = mc_components(p);
  Json eqs = Json::object();
  for (const auto& bd : reachable_equations(p)) {
    std::string label = equation_label(bd.first, bd.second);
    bool ok = !comps.count(bd);
    os << (ok ? "PASS " : "FAIL ") << label << "\n";
    eqs[label] = ok;
  }
  if (kind == StructureKind::quasi)
    for (const auto& [label, value] : quasi_equations(p)) {
      os << (value.is_zero() ? "PASS " : "FAIL ") << label << "\n";
      eqs[label] = value.is_zero();
    }
  print_verdict_lines(os, v);
  os << "result: " << (v.passed() ? "PASS" : "FAIL") << "\n";
  return finish(ctx, {{"kind", kind_name}, {"equations", eqs}}, &v, os.str());
}

inline int cmd_classify(Context& ctx, const StructurePackage& p) {
  Classification c = classify(p);
  Json j{{"governing", c.governing},
         {"structure", c.structure},
         {"total_degree_one", c.total_degree_one},
         {"maurer_cartan", c.maurer_cartan}};
  if (c.strict) j["strict"] = *c.strict;
  ctx.out << (ctx.json ? j.dump(2) + "\n" : describe(c));
  return pass;
}

inline int cmd_brackets(Context& ctx, const StructurePackage& p, int arity) {
  if (arity < 1) throw InputError("--arity must be at least 1");
  const unsigned n = static_cast<unsigned>(arity);
  Element part(p.space());
  for (const auto& [bd, comp] : p.components())
    if (bd.first == arity) part += comp;
  std::ostringstream os;
  Json rows = Json::array();
  const auto words = primal_words(*p.space(), n);
  for (const auto& w : words) {
    Element value = iad_word(part, w);
    std::string label = detail::word_label(*p.space(), w);
    os << "lambda_" << n << "(" << label << ") = " << print_element(value) << "\n";
    rows.push_back({{"word", label}, {"value", print_element(value)}});
  }
  if (words.empty()) os << "no basis words of length " << n << "\n";
  return finish(ctx, {{"arity", n}, {"table", rows}}, nullptr, os.str());
}

inline bool quasi_like(const StructurePackage& p) {
  return std::any_of(p.components().begin(), p.components().end(), [](const auto& e) { return e.first.first == 0; });
}

inline int cmd_double(Context& ctx, const StructurePackage& p, const std::string& out_path) {
  TripleStructure t = double_from_package(p);
  TripleKind kind = quasi_like(p) ? TripleKind::quasi_triple : TripleKind::triple;
  Verdict v = verify_triple(t, kind);
  write_json_file(out_path, triple_to_json(t));
  std::ostringstream os;
  os << "double: dim W = " << t.space->w->dim() << ", arities:";
  Json arities = Json::array();
  for (const auto& [n, mm] : t.brackets) {
    os << " " << n;
    arities.push_back(n);
  }
  os << "\nchecked as " << (kind == TripleKind::triple ? "triple" : "quasi-triple") << "\n";
  print_verdict_lines(os, v);
  os << "wrote " << out_path << "\n";
  os << "result: " << (v.passed() ? "PASS" : "FAIL") << "\n";
  return finish(ctx, {{"dim", t.space->w->dim()}, {"arities", arities}, {"output", out_path}}, &v, os.str());
}

inline int cmd_triple_to_package(Context& ctx, const std::string& in_path, const std::string& out_path,
                                 const std::string& kind_name, const std::string& space_out) {
  TripleStructure t = triple_from_json(read_json_file(in_path));
  TripleKind kind;
  if (kind_name == "auto") {
    kind = check_subalgebra(t, Half::minus).passed() ? TripleKind::triple : TripleKind::quasi_triple;
  } else {
    kind = parse_triple_kind(kind_name);
  }
  Verdict v = verify_triple(t, kind);
  std::ostringstream os;
  os << "checked as " << (kind == TripleKind::triple ? "triple" : kind == TripleKind::pair ? "pair" : "quasi-triple")
     << "\n";
  print_verdict_lines(os, v);
  Json j{{"input", in_path}};
  if (v.passed()) {
    StructurePackage p = package_from_triple(t, kind);
    write_json_file(out_path, package_to_json(p));
    if (!space_out.empty()) write_json_file(space_out, space_to_json(*p.space()));
    os << "components:";
    for (const auto& [bd, part] : p.components()) os << " " << component_label(bd.first, bd.second);
    os << "\nwrote " << out_path << "\n";
    j["output"] = out_path;
  }
  os << "result: " << (v.passed() ? "PASS" : "FAIL") << "\n";
  return finish(ctx, j, &v, os.str());
}

inline int cmd_iad_square(Context& ctx, const StructurePackage& p) {
  Verdict v = iad_square_detector(p);
  std::ostringstream os;
  print_verdict_lines(os, v);
  os << "(iad Q)^2 " << (v.passed() ? "vanishes" : "does not vanish") << "\n";
  os << "result: " << (v.passed() ? "PASS" : "FAIL") << "\n";
  return finish(ctx, Json::object(), &v, os.str());
}

inline int cmd_geom_oracle(Context& ctx, const std::string& space_path, int samples, std::uint64_t seed) {
  if (samples < 0) throw InputError("--samples must be nonnegative");
  SpacePtr s = space_from_json(read_json_file(space_path));
  Rng rng(seed);
  Verdict v;
  for (int i = 0; i < samples; ++i) {
    Element u = random_homogeneous(rng, s, 3, 4), w = random_homogeneous(rng, s, 3, 4);
    Verdict one = geom::oracle_check(u, w);
    if (!one.passed()) v.merge(one, "sample " + std::to_string(i) + ": ");
  }
  std::ostringstream os;
  os << "epsilon: " << (geom::epsilon > 0 ? "+1" : "-1") << "\n";
  os << "samples: " << samples << "\n";
  os << "seed: " << seed << "\n";
  os << "mismatches: " << v.defects.size() << "\n";
  print_verdict_lines(os, v);
  os << "result: " << (v.passed() ? "PASS" : "FAIL") << "\n";
  return finish(ctx, {{"epsilon", geom::epsilon}, {"samples", samples}, {"seed", seed}}, &v, os.str());
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Big-bracket calculus: graded Lie (bi)algebra and L-infinity structure checks"};
  app.name("bigbracket");
  app.require_subcommand(1);
  Context ctx{out};
  app.add_flag("--json", ctx.json, "Machine-readable output");

  std::string space, package, kind = "bialgebra", output, input, expr, triple_kind = "auto", space_out;
  int arity = 2, samples = 200;
  std::uint64_t seed = 1;

  auto with_json = [&](CLI::App* sub) {
    sub->add_flag("--json", ctx.json, "Machine-readable output");
    return sub;
  };
  auto needs_package = [&](CLI::App* sub) {
    sub->add_option("-s,--space", space, "Space JSON file")->required();
    sub->add_option("-p,--package", package, "Package JSON file")->required();
    return with_json(sub);
  };

  auto* eval = with_json(app.add_subcommand("eval", "Evaluate an expression and report its degrees"));
  eval->add_option("-s,--space", space, "Space JSON file (default: ungraded, inferred from the expression)");
  eval->add_option("expr", expr, "Expression")->required();

  auto* check = needs_package(app.add_subcommand("check", "Verify a package against a structure kind"));
  check->add_option("--kind", kind, "lie|colie|bialgebra|quasi|linf_algebra|linf_coalgebra|linf_bialgebra|linf_quasi")
      ->required();

  auto* cls = needs_package(app.add_subcommand("classify", "Classify a package"));

  auto* br = needs_package(app.add_subcommand("brackets", "Table of the n-ary bracket on basis words"));
  br->add_option("--arity", arity, "n")->required();

  auto* dbl = needs_package(app.add_subcommand("double", "Build the Manin double of a package"));
  dbl->add_option("-o,--output", output, "Triple JSON output file")->required();

  auto* t2p = with_json(app.add_subcommand("triple-to-package", "Recover a package from a Manin triple"));
  t2p->add_option("-i,--input", input, "Triple JSON file")->required();
  t2p->add_option("-o,--output", output, "Package JSON output file")->required();
  t2p->add_option("--kind", triple_kind, "auto|triple|pair|quasi-triple");
  t2p->add_option("--space-out", space_out, "Also write the base space JSON here");

  auto* iad = needs_package(app.add_subcommand("iad-square", "Check whether the iterated adjoint operator squares to zero"));

  auto* geo = with_json(app.add_subcommand("geom-oracle", "Compare the big bracket with the coordinate Poisson bracket"));
  geo->add_option("-s,--space", space, "Space JSON file")->required();
  geo->add_option("--samples", samples, "Number of random pairs");
  geo->add_option("--seed", seed, "Random seed");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return pass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return pass;
    }
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  try {
    if (*eval) return cmd_eval(ctx, space, expr);
    if (*check) return cmd_check(ctx, load_package(space, package), kind);
    if (*cls) return cmd_classify(ctx, load_package(space, package));
    if (*br) return cmd_brackets(ctx, load_package(space, package), arity);
    if (*dbl) return cmd_double(ctx, load_package(space, package), output);
    if (*t2p) return cmd_triple_to_package(ctx, input, output, triple_kind, space_out);
    if (*iad) return cmd_iad_square(ctx, load_package(space, package));
    if (*geo) return cmd_geom_oracle(ctx, space, samples, seed);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return fail;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace cli

}  // namespace bigbracket

#endif  // BIGBRACKET_CLI_HPP
