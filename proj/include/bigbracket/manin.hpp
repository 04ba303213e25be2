#ifndef BIGBRACKET_MANIN_HPP
#define BIGBRACKET_MANIN_HPP

// The double W = V ⊕ V*, its pairing, and Manin L∞-triples.

#include "bigbracket/structures.hpp"

namespace bigbracket {

/// W = V ⊕ V*: W generator α < n is e_α, W generator n + α is e*_α
/// (a primal of W of internal degree −d_α). W₊ = V, W₋ = V*.
struct DoubleSpace {
  SpacePtr base;
  SpacePtr w;

  explicit DoubleSpace(SpacePtr v) : base(std::move(v)) {
    std::vector<Generator> gens = base->generators();
    for (const auto& g : base->generators()) {
      std::string name = g.name + "_dual";
      while (base->find(name)) name += "_";
      gens.push_back({name, -g.degree});
    }
    w = make_space(std::move(gens));
  }

  std::size_t n() const { return base->dim(); }
  bool in_plus(std::size_t wi) const { return wi < n(); }

  /// The B(V) generator represented by W generator `wi`.
  GeneratorRef to_base(std::size_t wi) const { return wi < n() ? primal(wi) : dual(wi - n()); }
  std::size_t from_base(GeneratorRef g) const { return g.kind == Kind::primal ? g.index : n() + g.index; }
  std::size_t partner(std::size_t wi) const { return wi < n() ? wi + n() : wi - n(); }

  /// A length-1 element of B(V) as an element of W.
  Element to_w(const Element& x) const {
    Element out(w);
    for (const auto& [m, c] : x.terms()) {
      if (m.length() != 1) throw InputError("to_w: element is not in V ⊕ V*");
      GeneratorRef g = factors(*base, m).front();
      out += Element::generator(w, primal(from_base(g)), c);
    }
    return out;
  }

  /// An element of W as a length-1 element of B(V).
  Element to_b(const Element& x) const {
    Element out(base);
    for (const auto& [m, c] : x.terms()) {
      if (m.dual_count() != 0 || m.primal_count() != 1) throw InputError("to_b: element is not in W");
      out += Element::generator(base, to_base(factors(*w, m).front().index), c);
    }
    return out;
  }

  Element base_generator(std::size_t wi) const { return Element::generator(base, to_base(wi)); }

  /// "h" for e_h ∈ W₊, "h'" for e*_h ∈ W₋.
  std::string name(std::size_t wi) const { return base->name(to_base(wi)); }

  std::optional<std::size_t> find(std::string_view name) const {
    bool is_dual = !name.empty() && name.back() == '\'';
    auto i = base->find(is_dual ? name.substr(0, name.size() - 1) : name);
    if (!i) return std::nullopt;
    return is_dual ? n() + *i : *i;
  }
};

/// λ_n : ∧ⁿW → W, stored on canonical basis words.
struct TripleStructure {
  std::shared_ptr<const DoubleSpace> space;
  std::map<unsigned, MultiMap> brackets;

  Element apply(const Monomial& word) const {
    auto it = brackets.find(word.primal_count());
    if (it == brackets.end()) return Element(space->w);
    auto jt = it->second.table.find(word);
    return jt == it->second.table.end() ? Element(space->w) : jt->second;
  }
};

/// ⟨a, b⟩ = [a, b] in B(V). ⟨e*_α, e_α⟩ = 1; ⟨e_α, e*_α⟩ = 1 for generators of
/// odd total degree (all of them when V is ungraded) and −1 otherwise.
inline Scalar pairing(const DoubleSpace& d, const Element& a, const Element& b) {
  Element v = big_bracket(d.to_b(a), d.to_b(b));
  return v.is_zero() ? Scalar(0) : v.coefficient(Monomial(d.n()));
}

inline Scalar pairing_basis(const DoubleSpace& d, std::size_t a, std::size_t b) {
  return pairing(d, Element::generator(d.w, primal(a)), Element::generator(d.w, primal(b)));
}

/// Rank of a rational matrix by Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Scalar>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Scalar f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::string w_word_label(const DoubleSpace& d, const Monomial& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto g : factors(*d.w, w)) {
    if (!out.empty()) out += "^";
    out += d.name(g.index);
  }
  return out;
}

inline std::shared_ptr<const DoubleSpace> make_double(const SpacePtr& base) {
  return std::make_shared<const DoubleSpace>(base);
}

/// λ_n(w) = [[…[Q, w₁], …], wₙ] projected to V ⊕ V*, for Q = ΣP.
inline TripleStructure double_from_package(const StructurePackage& p,
                                           std::shared_ptr<const DoubleSpace> d = nullptr) {
  if (!d) d = make_double(p.space());
  if (!same_space(d->base, p.space())) throw InputError("double_from_package: space mismatch");
  Element q = p.total();
  Element defect = big_bracket(q, q);
  if (!defect.is_zero()) throw PreconditionError("double_from_package: [Q, Q] != 0");
  TripleStructure t{d, {}};
  std::set<unsigned> arities;
  for (const auto& [m, c] : q.terms()) {
    if (m.length() < 2) throw InputError("double_from_package: components of length < 2 are not supported");
    arities.insert(m.length() - 1);
  }
  for (unsigned n : arities) {
    MultiMap mm{d->w, n, {}};
    Element qn(d->base);
    for (const auto& [m, c] : q.terms())
      if (m.length() == n + 1) qn.add(m, c);
    for (const auto& word : primal_words(*d->w, n)) {
      Element acc = qn;
      for (auto g : factors(*d->w, word)) acc = big_bracket(acc, d->base_generator(g.index));
      if (!acc.is_zero()) mm.table.emplace(word, d->to_w(acc));
    }
    if (!mm.table.empty()) t.brackets.emplace(n, std::move(mm));
  }
  return t;
}

/// ⟨λ_n(v₁…vₙ), v₀⟩ = (−1)^{|vₙ||v₀|}⟨λ_n(v₁…vₙ₋₁ v₀), vₙ⟩ on all basis words.
inline Verdict check_invariance(const TripleStructure& t) {
  Verdict v;
  const DoubleSpace& d = *t.space;
  const GradedSpace& w = *d.w;
  for (const auto& [n, mm] : t.brackets) {
    for (const auto& word : primal_words(w, n)) {
      auto fs = factors(w, word);
      Element lhs_value = t.apply(word);
      for (std::size_t v0 = 0; v0 < w.dim(); ++v0) {
        std::vector<GeneratorRef> other(fs.begin(), fs.end() - 1);
        other.push_back(primal(v0));
        Element swapped = canonicalize(d.w, other);
        if (swapped.size() > 1) throw InputError("check_invariance: unexpected canonical form");
        Element rhs_value(d.w);
        for (const auto& [m, c] : swapped.terms()) rhs_value += c * t.apply(m);
        std::size_t vn = fs.back().index;
        Scalar lhs = pairing(d, lhs_value, Element::generator(d.w, primal(v0)));
        Scalar rhs = sign_of_parity((w.odd(vn) ? 1 : 0) * (w.odd(v0) ? 1 : 0)) *
                     pairing(d, rhs_value, Element::generator(d.w, primal(vn)));
        if (lhs != rhs)
          v.defects.insert_or_assign("invariance " + w_word_label(d, word) + " ; " + d.name(v0),
                                     Element::scalar(d.base, lhs - rhs));
      }
    }
  }
  return v;
}

enum class Half { plus, minus };

/// λ_n(∧ⁿ W±) ⊆ W± for all n.
inline Verdict check_subalgebra(const TripleStructure& t, Half half) {
  Verdict v;
  const DoubleSpace& d = *t.space;
  auto inside = [&](std::size_t wi) { return d.in_plus(wi) == (half == Half::plus); };
  for (const auto& [n, mm] : t.brackets)
    for (const auto& [word, value] : mm.table) {
      auto fs = factors(*d.w, word);
      if (!std::all_of(fs.begin(), fs.end(), [&](GeneratorRef g) { return inside(g.index); })) continue;
      Element escaped(d.w);
      for (const auto& [m, c] : value.terms())
        if (!inside(factors(*d.w, m).front().index)) escaped.add(m, c);
      v.require_zero(std::string(half == Half::plus ? "W+" : "W-") + " closure " + w_word_label(d, word), escaped);
    }
  return v;
}

/// The tensor λ ∈ ∧W*⊗W of the whole family.
inline Element triple_tensor(const TripleStructure& t) {
  Element out(t.space->w);
  for (const auto& [n, mm] : t.brackets) out += tensor_from_table(t.space->w, n, mm.table);
  return out;
}

enum class TripleKind { triple, pair, quasi_triple };

inline TripleKind parse_triple_kind(std::string_view s) {
  if (s == "triple") return TripleKind::triple;
  if (s == "pair") return TripleKind::pair;
  if (s == "quasi-triple" || s == "quasi_triple") return TripleKind::quasi_triple;
  throw InputError("unknown triple kind '" + std::string(s) + "'");
}

inline Verdict verify_triple(const TripleStructure& t, TripleKind kind) {
  Verdict v;
  const DoubleSpace& d = *t.space;
  const std::size_t dim = d.w->dim();
  std::vector<std::vector<Scalar>> gram(dim, std::vector<Scalar>(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) gram[a][b] = pairing_basis(d, a, b);
  if (rational_rank(gram) != dim) v.defects.emplace("nondegeneracy", Element::scalar(d.base, 1));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if (d.in_plus(a) != d.in_plus(b) || gram[a][b] == 0) continue;
      bool plus = d.in_plus(a);
      if (!plus && kind == TripleKind::pair) continue;
      v.defects.emplace(std::string(plus ? "isotropy W+ " : "isotropy W- ") + d.name(a) + "," + d.name(b),
                        Element::scalar(d.base, gram[a][b]));
    }
  // W₊ ⊕ W₋ = W: the two marked bases together span W.
  std::vector<std::vector<Scalar>> basis(dim, std::vector<Scalar>(dim));
  for (std::size_t a = 0; a < dim; ++a) basis[a][a] = 1;
  if (rational_rank(basis) != dim) v.defects.emplace("direct sum", Element::scalar(d.base, 1));
  v.merge(check_invariance(t));
  v.merge(check_subalgebra(t, Half::plus));
  if (kind == TripleKind::triple) v.merge(check_subalgebra(t, Half::minus));
  Element lambda = triple_tensor(t);
  for (const auto& [bd, part] : bidegree_components(big_bracket(lambda, lambda)))
    v.require_zero("L-infinity [lambda,lambda] (" + std::to_string(bd.first) + "," + std::to_string(bd.second) + ")",
                   part);
  return v;
}

/// Inverse of double_from_package: every monomial m of B(V) is read off by
/// fully contracting with the partners of its factors through the pairing.
inline StructurePackage package_from_triple(const TripleStructure& t, TripleKind kind = TripleKind::triple) {
  Verdict v = verify_triple(t, kind);
  if (!v.passed()) throw PreconditionError("package_from_triple: " + v.defects.begin()->first + " violated");
  const DoubleSpace& d = *t.space;
  Element q(d.base);
  std::set<Monomial> seen;
  for (const auto& [n, mm] : t.brackets)
    for (const auto& [word, value] : mm.table)
      for (const auto& [out, coeff] : value.terms()) {
        const std::size_t g = factors(*d.w, out).front().index;
        std::vector<GeneratorRef> parts;
        std::vector<Element> args;
        for (auto f : factors(*d.w, word)) {
          parts.push_back(d.to_base(d.partner(f.index)));
          args.push_back(d.base_generator(f.index));
        }
        parts.push_back(d.to_base(g));
        Element mono = canonicalize(d.base, parts);
        if (mono.is_zero()) continue;
        const Monomial m = mono.terms().begin()->first;
        if (!seen.insert(m).second) continue;
        Element acc = Element::monomial(d.base, m);
        for (const auto& a : args) acc = big_bracket(acc, a);
        Element last = d.base_generator(d.partner(g));
        Scalar beta = big_bracket(acc, last).coefficient(Monomial(d.n()));
        Scalar value_pairing = pairing(d, value, Element::generator(d.w, primal(d.partner(g))));
        if (beta == 0) throw InputError("package_from_triple: degenerate contraction");
        q.add(m, value_pairing / beta);
      }
  return StructurePackage::from_element(q);
}

}  // namespace bigbracket

#endif  // BIGBRACKET_MANIN_HPP
