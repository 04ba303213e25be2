#ifndef BIGBRACKET_STRUCTURES_HPP
#define BIGBRACKET_STRUCTURES_HPP

// Structure packages, Maurer–Cartan components, verifiers for the eight
// structure kinds, brute-force axiom oracles and the classifier.

#include <sstream>

#include "bigbracket/homotopy.hpp"

namespace bigbracket {

using Bidegree = std::pair<int, int>;

inline std::string component_label(int k, int l) {
  if (k < 10 && l < 10) return "t" + std::to_string(k) + std::to_string(l);
  return "t" + std::to_string(k) + "_" + std::to_string(l);
}

/// Parses "t21" / "t1_10" into (k, l).
inline Bidegree parse_component_label(std::string_view label) {
  auto bad = [&] { return InputError("malformed component label '" + std::string(label) + "'"); };
  if (label.size() < 3 || label[0] != 't') throw bad();
  std::string rest(label.substr(1));
  for (char c : rest)
    if (!(c == '_' || (c >= '0' && c <= '9'))) throw bad();
  auto us = rest.find('_');
  if (us == std::string::npos) {
    if (rest.size() != 2) throw bad();
    return {rest[0] - '0', rest[1] - '0'};
  }
  if (us == 0 || us + 1 == rest.size() || rest.find('_', us + 1) != std::string::npos) throw bad();
  return {std::stoi(rest.substr(0, us)), std::stoi(rest.substr(us + 1))};
}

/// A candidate structure: bidegree-labelled components t_kl.
class StructurePackage {
 public:
  StructurePackage() = default;
  explicit StructurePackage(SpacePtr space) : space_(std::move(space)) {}

  const SpacePtr& space() const { return space_; }
  const std::map<Bidegree, Element>& components() const { return components_; }

  /// Adds `value` to component (k, l); every term must have that bidegree.
  StructurePackage& add(int k, int l, const Element& value) {
    require_same_space(Element(space_), value);
    for (const auto& [m, c] : value.terms())
      if (static_cast<int>(m.dual_count()) != k || static_cast<int>(m.primal_count()) != l)
        throw InputError("component " + component_label(k, l) + " contains a term of another bidegree");
    auto it = components_.try_emplace({k, l}, Element(space_)).first;
    it->second += value;
    if (it->second.is_zero()) components_.erase(it);
    return *this;
  }

  /// Splits an arbitrary element into components.
  static StructurePackage from_element(const Element& q) {
    StructurePackage p(q.space());
    for (const auto& [bd, part] : bidegree_components(q)) p.add(bd.first, bd.second, part);
    return p;
  }

  Element component(int k, int l) const {
    auto it = components_.find({k, l});
    return it == components_.end() ? Element(space_) : it->second;
  }

  Element total() const {
    Element q(space_);
    for (const auto& [bd, part] : components_) q += part;
    return q;
  }

  bool empty() const { return components_.empty(); }

  friend bool operator==(const StructurePackage& a, const StructurePackage& b) {
    return a.components_ == b.components_;
  }

 private:
  SpacePtr space_;
  std::map<Bidegree, Element> components_;
};

// ---------------------------------------------------------------------------
// Constructors from structure constants

/// The unique t ∈ ∧ᵏV*⊗∧ˡV whose iterated adjoint action on every canonical
/// k-word equals `values[word]`. Each basis monomial dual(a)·u acts on a
/// single argument word a, so coefficients are read off one at a time.
inline Element tensor_from_table(const SpacePtr& space, unsigned k, const std::map<Monomial, Element>& values) {
  Element t(space);
  const std::size_t n = space->dim();
  for (const auto& [word, value] : values) {
    if (word.dual_count() != 0 || word.primal_count() != k)
      throw InputError("argument word has the wrong arity");
    for (const auto& [u, coeff] : value.terms()) {
      if (u.dual_count() != 0) throw InputError("value is not in ∧V");
      Monomial m = u;
      for (std::size_t i = 0; i < n; ++i) m[i] = word[n + i];
      Element basis = Element::monomial(space, m);
      Element image = iad_word(basis, word);
      Scalar kappa = image.coefficient(u);
      if (kappa == 0 || image.size() != 1) throw InputError("tensor basis does not act diagonally");
      t.add(m, coeff / kappa);
    }
  }
  return t;
}

namespace detail {

inline Monomial primal_word(const GradedSpace& s, std::span<const std::size_t> indices) {
  Monomial m(s.dim());
  for (auto i : indices) ++m[s.dim() + i];
  return m;
}

}  // namespace detail

/// Bracket constants: (α, β) ↦ {e_α, e_β} ∈ V.
using BracketConstants = std::map<std::pair<std::size_t, std::size_t>, Element>;
/// Cobracket constants: α ↦ δ(e_α) ∈ ∧²V.
using CobracketConstants = std::map<std::size_t, Element>;

namespace detail {

/// Normalizes bracket constants to canonical pairs α ≤ β, checking graded
/// antisymmetry {e_β, e_α} = (−1)^{|e_α||e_β|}{e_α, e_β} where both are given.
inline std::map<std::pair<std::size_t, std::size_t>, Element> canonical_pairs(const GradedSpace& s,
                                                                              const BracketConstants& c) {
  std::map<std::pair<std::size_t, std::size_t>, Element> out;
  for (const auto& [ab, v] : c) {
    auto [a, b] = ab;
    s.check(primal(a));
    s.check(primal(b));
    for (const auto& [m, x] : v.terms())
      if (m.dual_count() != 0 || m.primal_count() != 1)
        throw InputError("bracket constant is not an element of V");
    if (a == b && s.odd(a) && !v.is_zero())
      throw InputError("non-alternating bracket constants: {" + s.generator(a).name + ", " + s.generator(a).name +
                       "} must vanish");
    Element normalized = v;
    if (a > b) {
      std::swap(a, b);
      if (s.odd(a) && s.odd(b)) normalized = -normalized;
    }
    auto [it, inserted] = out.try_emplace({a, b}, normalized);
    if (!inserted && !(it->second == normalized))
      throw InputError("non-alternating bracket constants for {" + s.generator(a).name + ", " +
                       s.generator(b).name + "}");
  }
  return out;
}

}  // namespace detail

/// l ∈ ∧²V*⊗V with [[l, e_α], e_β] = {e_α, e_β}.
inline Element build_bracket_tensor(const SpacePtr& space, const BracketConstants& constants) {
  std::map<Monomial, Element> values;
  for (const auto& [ab, v] : detail::canonical_pairs(*space, constants)) {
    std::size_t idx[2] = {ab.first, ab.second};
    values.emplace(detail::primal_word(*space, idx), v);
  }
  return tensor_from_table(space, 2, values);
}

/// c ∈ V*⊗∧²V with [c, e_α] = δ(e_α).
inline Element build_cobracket_tensor(const SpacePtr& space, const CobracketConstants& constants) {
  std::map<Monomial, Element> values;
  for (const auto& [a, v] : constants) {
    space->check(primal(a));
    for (const auto& [m, x] : v.terms())
      if (m.dual_count() != 0 || m.primal_count() != 2)
        throw InputError("cobracket value of " + space->generator(a).name + " is not in ∧²V");
    std::size_t idx[1] = {a};
    values.emplace(detail::primal_word(*space, idx), v);
  }
  return tensor_from_table(space, 1, values);
}

// ---------------------------------------------------------------------------
// Maurer–Cartan equations

inline Element mc_defect(const StructurePackage& p) {
  Element q = p.total();
  return big_bracket(q, q);
}

/// Label of the bidegree-(p, q) component of [T, T].
inline std::string equation_label(int p, int q) {
  if (p == 1 && q == 1) return "Eq11";
  if (p == 1 && q == 2) return "Eq12and21:12";
  if (p == 2 && q == 1) return "Eq12and21:21";
  if (p == 2 && q == 2) return "Eq22";
  if (p == 3 && q == 1) return "Eq31";
  if (p == 1 && q == 3) return "Eq13";
  return "MC(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

inline std::map<Bidegree, Element> mc_components(const StructurePackage& p) {
  return bidegree_components(mc_defect(p));
}

enum class StructureKind { lie, colie, bialgebra, quasi, linf_algebra, linf_coalgebra, linf_bialgebra, linf_quasi };

inline StructureKind parse_kind(std::string_view s) {
  static const std::pair<const char*, StructureKind> table[] = {
      {"lie", StructureKind::lie},
      {"colie", StructureKind::colie},
      {"bialgebra", StructureKind::bialgebra},
      {"quasi", StructureKind::quasi},
      {"linf_algebra", StructureKind::linf_algebra},
      {"linf_coalgebra", StructureKind::linf_coalgebra},
      {"linf_bialgebra", StructureKind::linf_bialgebra},
      {"linf_quasi", StructureKind::linf_quasi},
  };
  for (const auto& [name, kind] : table)
    if (s == name) return kind;
  throw InputError("unknown structure kind '" + std::string(s) + "'");
}

inline bool kind_allows(StructureKind kind, int k, int l) {
  switch (kind) {
    case StructureKind::lie: return k == 2 && l == 1;
    case StructureKind::colie: return k == 1 && l == 2;
    case StructureKind::bialgebra: return (k == 2 && l == 1) || (k == 1 && l == 2);
    case StructureKind::quasi: return (k == 2 && l == 1) || (k == 1 && l == 2) || (k == 0 && l == 3);
    case StructureKind::linf_algebra: return k >= 1 && l == 1;
    case StructureKind::linf_coalgebra: return k == 1 && l >= 1;
    case StructureKind::linf_bialgebra: return k >= 1 && l >= 1;
    case StructureKind::linf_quasi: return (k >= 1 && l >= 1) || (k == 0 && l >= 3);
  }
  return false;
}

/// The four independent equations of a strict quasi-bialgebra
/// l + c + φ: [l,l], [c,c] + 2[l,φ], [c,φ], [c,l].
inline std::vector<std::pair<std::string, Element>> quasi_equations(const StructurePackage& p) {
  Element l = p.component(2, 1), c = p.component(1, 2), phi = p.component(0, 3);
  return {
      {"quasi-1 [l,l]", big_bracket(l, l)},
      {"quasi-2 [c,c]+2[l,phi]", big_bracket(c, c) + Scalar(2) * big_bracket(l, phi)},
      {"quasi-3 [c,phi]", big_bracket(c, phi)},
      {"quasi-4 [c,l]", big_bracket(c, l)},
  };
}

/// Support, total degree and Maurer–Cartan checks for a structure kind.
inline Verdict verify(StructureKind kind, const StructurePackage& p) {
  Verdict v;
  const GradedSpace& s = *p.space();
  for (const auto& [bd, part] : p.components()) {
    auto [k, l] = bd;
    const std::string label = component_label(k, l);
    if (!kind_allows(kind, k, l)) {
      v.defects.emplace("support " + label, part);
      v.notes.push_back(label + " lies outside the governing subalgebra of this kind");
    }
    Element off(p.space());
    for (const auto& [m, c] : part.terms())
      if (total_degree(s, m) != 1) off.add(m, c);
    if (!off.is_zero()) {
      v.defects.emplace("degree " + label, off);
      v.notes.push_back(label + " has terms of total degree != 1");
    }
  }
  for (const auto& [bd, value] : mc_components(p)) v.require_zero(equation_label(bd.first, bd.second), value);
  if (kind == StructureKind::quasi)
    for (const auto& [label, value] : quasi_equations(p)) v.require_zero(label, value);
  return v;
}

// ---------------------------------------------------------------------------
// Brute-force oracles on structure constants

/// Strict structure constants: bracket, cobracket and φ ∈ ∧³V.
struct StrictConstants {
  SpacePtr space;
  BracketConstants bracket;
  CobracketConstants cobracket;
  Element phi;
};

/// Reads the constants of a strict package back through the iterated
/// adjoint action.
inline StrictConstants constants_from_package(const StructurePackage& p) {
  StrictConstants out{p.space(), {}, {}, p.component(0, 3)};
  const GradedSpace& s = *p.space();
  Element l = p.component(2, 1), c = p.component(1, 2);
  for (std::size_t a = 0; a < s.dim(); ++a) {
    Element ea = Element::generator(p.space(), primal(a));
    Element d = big_bracket(c, ea);
    if (!d.is_zero()) out.cobracket.emplace(a, d);
    for (std::size_t b = a; b < s.dim(); ++b) {
      Element eb = Element::generator(p.space(), primal(b));
      Element args[] = {ea, eb};
      Element v = iad_apply(l, args);
      if (!v.is_zero()) out.bracket.emplace(std::make_pair(a, b), v);
    }
  }
  return out;
}

/// Axioms evaluated directly from the structure-constant tables over every
/// basis tuple, without the big bracket. Parities are total-degree parities;
/// the bracket is graded symmetric, {y, x} = (−1)^{|x||y|}{x, y}.
class ConstantsOracle {
 public:
  explicit ConstantsOracle(const StrictConstants& k)
      : space_(k.space), pairs_(detail::canonical_pairs(*k.space, k.bracket)), cobracket_(k.cobracket),
        phi_(k.phi.space() ? k.phi : Element(k.space)) {}

  int par(std::size_t a) const { return space_->odd(a) ? 1 : 0; }

  Element gen(std::size_t a) const { return Element::generator(space_, primal(a)); }

  Element bracket_basis(std::size_t a, std::size_t b) const {
    int sign = 1;
    if (a > b) {
      std::swap(a, b);
      sign = sign_of_parity(par(a) * par(b));
    }
    auto it = pairs_.find({a, b});
    if (it == pairs_.end()) return Element(space_);
    return Scalar(sign) * it->second;
  }

  /// {x, y} for x, y ∈ V.
  Element bracket(const Element& x, const Element& y) const {
    Element out(space_);
    for (const auto& [mx, cx] : x.terms())
      for (const auto& [my, cy] : y.terms())
        out += cx * cy * bracket_basis(index_of(mx), index_of(my));
    return out;
  }

  Element delta(const Element& x) const {
    Element out(space_);
    for (const auto& [m, c] : x.terms()) {
      auto it = cobracket_.find(index_of(m));
      if (it != cobracket_.end()) out += c * it->second;
    }
    return out;
  }

  /// Applies a per-generator map to a ∧V element as a derivation of parity
  /// `op_parity`: a₁∧…∧aₘ ↦ Σ (−1)^{op·|a₁…a_{i−1}|} a₁∧…∧f(aᵢ)∧…∧aₘ.
  template <class F>
  Element derivation(const Element& x, int op_parity, F&& f) const {
    Element out(space_);
    for (const auto& [m, c] : x.terms()) {
      auto fs = factors(*space_, m);
      int prefix = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Element term = Element::scalar(space_, c * sign_of_parity(op_parity * prefix));
        for (std::size_t j = 0; j < fs.size(); ++j)
          term = wedge(term, j == i ? f(fs[j].index) : gen(fs[j].index));
        out += term;
        prefix += par(fs[i].index);
      }
    }
    return out;
  }

  /// δ extended to ∧V as an odd derivation.
  Element delta_ext(const Element& x) const {
    return derivation(x, 1, [&](std::size_t a) { return delta(gen(a)); });
  }

  /// ad_x extended to ∧V as a derivation of parity 1 + |x|.
  Element ad_ext(std::size_t xa, const Element& x) const {
    return derivation(x, 1 + par(xa), [&](std::size_t a) { return bracket_basis(xa, a); });
  }

  /// Σ over (2,1)-unshuffles of (a, b, c): {{·,·},·}.
  Element jacobiator(std::size_t a, std::size_t b, std::size_t c) const {
    Element out = bracket(bracket_basis(a, b), gen(c));
    out += Scalar(sign_of_parity(par(b) * par(c))) * bracket(bracket_basis(a, c), gen(b));
    out += Scalar(sign_of_parity(par(a) * (par(b) + par(c)))) * bracket(bracket_basis(b, c), gen(a));
    return out;
  }

  Verdict jacobi() const {
    Verdict v;
    for (const auto& w : primal_words(*space_, 3)) {
      auto f = factors(*space_, w);
      v.require_zero("Jacobi " + detail::word_label(*space_, w), jacobiator(f[0].index, f[1].index, f[2].index));
    }
    return v;
  }

  Verdict cojacobi() const {
    Verdict v;
    for (std::size_t a = 0; a < space_->dim(); ++a)
      v.require_zero("coJacobi " + space_->generator(a).name, delta_ext(delta(gen(a))));
    return v;
  }

  /// δ{x,y} = −(−1)^{|x|} ad_x δ(y) − (−1)^{(1+|x|)|y|} ad_y δ(x).
  Verdict cocycle() const {
    Verdict v;
    for (const auto& w : primal_words(*space_, 2)) {
      auto f = factors(*space_, w);
      std::size_t a = f[0].index, b = f[1].index;
      Element lhs = delta(bracket_basis(a, b));
      Element rhs = Scalar(-sign_of_parity(par(a))) * ad_ext(a, delta(gen(b))) -
                    Scalar(sign_of_parity((1 + par(a)) * par(b))) * ad_ext(b, delta(gen(a)));
      v.require_zero("cocycle " + detail::word_label(*space_, w), lhs - rhs);
    }
    return v;
  }

  /// Alt(δ⊗1)δ(x) = −(−1)^{|x|} ad_x φ, with Alt(δ⊗1)δ realized as the odd
  /// derivation extension of δ applied to δ(x).
  Verdict modified_cojacobi() const {
    Verdict v;
    for (std::size_t a = 0; a < space_->dim(); ++a) {
      Element lhs = delta_ext(delta(gen(a)));
      Element rhs = Scalar(-sign_of_parity(par(a))) * ad_ext(a, phi_);
      v.require_zero("modified coJacobi " + space_->generator(a).name, lhs - rhs);
    }
    return v;
  }

  /// (δ⊗1⊗1 + 1⊗δ⊗1 + 1⊗1⊗δ)(φ) = 0.
  Verdict phi_closed() const {
    Verdict v;
    v.require_zero("delta(phi)", delta_ext(phi_));
    return v;
  }

 private:
  std::size_t index_of(const Monomial& m) const {
    if (m.dual_count() != 0 || m.primal_count() != 1) throw InputError("oracle: argument is not in V");
    for (std::size_t i = 0; i < space_->dim(); ++i)
      if (m[space_->dim() + i]) return i;
    throw InputError("oracle: empty monomial");
  }

  SpacePtr space_;
  std::map<std::pair<std::size_t, std::size_t>, Element> pairs_;
  CobracketConstants cobracket_;
  Element phi_;
};

/// Brute-force axiom check for strict kinds.
inline Verdict oracle_axioms(StructureKind kind, const StrictConstants& k) {
  ConstantsOracle o(k);
  Verdict v;
  switch (kind) {
    case StructureKind::lie:
      v.merge(o.jacobi());
      break;
    case StructureKind::colie:
      v.merge(o.cojacobi());
      break;
    case StructureKind::bialgebra:
      v.merge(o.jacobi());
      v.merge(o.cojacobi());
      v.merge(o.cocycle());
      break;
    case StructureKind::quasi:
      v.merge(o.jacobi());
      v.merge(o.modified_cojacobi());
      v.merge(o.phi_closed());
      v.merge(o.cocycle());
      break;
    default:
      throw InputError("oracle_axioms: only strict kinds have brute-force oracles");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Classification

struct Classification {
  std::string governing;  // smallest governing subalgebra: L, C, L∩C, B, QB or none
  std::string structure;  // e.g. "Lie bialgebra", "L-infinity algebra"
  bool total_degree_one = true;
  bool maurer_cartan = false;
  std::optional<bool> strict;  // reported for ungraded spaces only
};

inline bool strict_support(const StructurePackage& p) {
  return std::all_of(p.components().begin(), p.components().end(), [](const auto& e) {
    auto [k, l] = e.first;
    return (k == 2 && l == 1) || (k == 1 && l == 2) || (k == 0 && l == 3);
  });
}

inline Classification classify(const StructurePackage& p) {
  Classification r;
  Element q = p.total();
  const GradedSpace& s = *p.space();
  for (const auto& [m, c] : q.terms())
    if (total_degree(s, m) != 1) r.total_degree_one = false;
  r.maurer_cartan = big_bracket(q, q).is_zero();
  bool strict = strict_support(p);
  if (s.ungraded_space()) r.strict = strict;
  bool in_l = in_subspace(Subspace::L, q), in_c = in_subspace(Subspace::C, q);
  bool weak = !p.component(0, 1).is_zero() || !p.component(0, 2).is_zero();
  std::string base;
  if (q.is_zero()) {
    r.governing = "L∩C";
    r.structure = "zero structure";
    return r;
  }
  if (in_l && in_c) {
    r.governing = "L∩C";
    base = "differential";
  } else if (in_l) {
    r.governing = "L";
    base = "algebra";
  } else if (in_c) {
    r.governing = "C";
    base = "coalgebra";
  } else if (in_subspace(Subspace::B, q)) {
    r.governing = "B";
    base = "bialgebra";
  } else if (in_subspace(Subspace::QB, q) && !weak) {
    r.governing = "QB";
    base = "quasi-bialgebra";
  } else {
    r.governing = "none";
    r.structure = weak ? "weak terms t01/t02 present (unsupported)" : "outside every governing subalgebra";
    return r;
  }
  if (base == "differential") {
    r.structure = "differential (t11 only)";
  } else {
    r.structure = (strict ? "Lie " : "L-infinity ") + base;
  }
  return r;
}

inline std::string describe(const Classification& c) {
  std::ostringstream os;
  os << "governing subalgebra: " << c.governing << "\n";
  os << "structure: " << c.structure << "\n";
  os << "total degree 1: " << (c.total_degree_one ? "yes" : "no") << "\n";
  os << "Maurer-Cartan: " << (c.maurer_cartan ? "holds" : "fails") << "\n";
  if (c.strict) os << "ungraded degeneration: " << (*c.strict ? "strict" : "not strict") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// (iad Q)² detector

/// Squares the full iterated adjoint operator of ΣP on ∧^{≤cap}V.
inline Verdict iad_square_detector(const StructurePackage& p, unsigned cap) {
  Verdict v;
  Element q = p.total();
  Element defect = big_bracket(q, q);
  if (!defect.is_zero()) {
    v.notes.push_back("precondition [Q,Q] = 0 violated");
    v.defects.emplace("precondition [Q,Q]=0", defect);
  }
  Endomorphism square = operator_square(iad_operator(q, cap));
  for (const auto& [w, img] : square.table) v.require_zero("square " + detail::word_label(*p.space(), w), img);
  v.notes.push_back("words checked: " + std::to_string(square.table.size()));
  return v;
}

inline Verdict iad_square_detector(const StructurePackage& p) {
  return iad_square_detector(p, default_cap(*p.space(), p.total()));
}

}  // namespace bigbracket

#endif  // BIGBRACKET_STRUCTURES_HPP
