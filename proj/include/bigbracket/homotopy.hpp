#ifndef BIGBRACKET_HOMOTOPY_HPP
#define BIGBRACKET_HOMOTOPY_HPP

// Unshuffles, coderivation extension, the iterated adjoint action (higher
// derived brackets), derived brackets on B⁻¹ and operators on ∧V.

#include <numeric>

#include "bigbracket/bracket.hpp"
#include "bigbracket/verdict.hpp"

namespace bigbracket {

struct Unshuffle {
  std::vector<std::size_t> perm;  // 0-based: perm[0..k) increasing, perm[k..n) increasing
  int sign = 1;                   // sign of the permutation
};

/// All (k, n−k) unshuffles of {0..n−1}, in lexicographic order of the first
/// block.
inline std::vector<Unshuffle> unshuffles(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw InputError("unshuffles(" + std::to_string(n) + ", " + std::to_string(k) + "): need 0 <= k <= n");
  std::vector<Unshuffle> out;
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::fill(chosen.begin(), chosen.begin() + k, true);
  // prev_permutation on a true-first mask walks subsets in lexicographic order.
  do {
    Unshuffle u;
    for (int i = 0; i < n; ++i)
      if (chosen[i]) u.perm.push_back(static_cast<std::size_t>(i));
    for (int i = 0; i < n; ++i)
      if (!chosen[i]) u.perm.push_back(static_cast<std::size_t>(i));
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (u.perm[a] > u.perm[b]) ++inversions;
    u.sign = sign_of_parity(inversions);
    out.push_back(std::move(u));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return out;
}

/// Koszul sign of listing items in the order perm[0], perm[1], … given the
/// parity of each item.
inline int koszul_sign(std::span<const int> parities, std::span<const std::size_t> perm) {
  int e = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) e += parities[perm[a]] * parities[perm[b]];
  return sign_of_parity(e);
}

namespace detail {

inline Element wedge_all(const SpacePtr& space, std::span<const Element> items) {
  Element acc = Element::scalar(space, 1);
  for (const auto& x : items) acc = wedge(acc, x);
  return acc;
}

inline std::vector<Element> word_arguments(const SpacePtr& space, const Monomial& word) {
  std::vector<Element> args;
  for (auto g : factors(*space, word)) args.push_back(Element::generator(space, g));
  return args;
}

inline std::vector<int> argument_parities(std::span<const Element> args) {
  std::vector<int> out;
  for (const auto& a : args) {
    auto p = parity(a);
    if (!p) throw InputError("iterated adjoint action: argument of mixed parity");
    out.push_back(*p);
  }
  return out;
}

inline bool pure_primal_word(const Monomial& m) { return m.dual_count() == 0; }

}  // namespace detail

/// [[…[t, a₁], …], aₘ].
inline Element nested_bracket(const Element& t, std::span<const Element> args) {
  Element acc = t;
  for (const auto& a : args) {
    if (acc.is_zero()) break;
    acc = big_bracket(acc, a);
  }
  return acc;
}

/// An alternating multilinear map ∧ᵏV → ∧V stored on canonical words.
struct MultiMap {
  SpacePtr space;
  unsigned arity = 0;
  std::map<Monomial, Element> table;

  /// Value on an ordered list of generators.
  Element apply(std::span<const GeneratorRef> args) const {
    Element w = canonicalize(space, args);
    Element out(space);
    for (const auto& [m, c] : w.terms()) {
      auto it = table.find(m);
      if (it != table.end()) out += c * it->second;
    }
    return out;
  }

  /// Multilinear evaluation on primal elements.
  Element apply(std::span<const Element> args) const {
    Element word = detail::wedge_all(space, args);
    Element out(space);
    for (const auto& [m, c] : word.terms()) {
      auto it = table.find(m);
      if (it != table.end()) out += c * it->second;
    }
    return out;
  }
};

/// Iterated adjoint action of t on primal arguments. For n ≤ k (k the dual
/// count of a component) it is the nested bracket; for n > k it is the
/// unshuffle sum with Koszul signs, the bracketed block placed first.
inline Element iad_apply(const Element& t, std::span<const Element> args) {
  SpacePtr space = t.space();
  for (const auto& a : args) {
    if (!space) space = a.space();
    require_same_space(t, a);
    for (const auto& [m, c] : a.terms())
      if (m.dual_count() != 0 || m.primal_count() != 1)
        throw InputError("iterated adjoint action: argument is not an element of V");
  }
  Element out(space);
  if (t.is_zero()) return out;
  const int n = static_cast<int>(args.size());
  auto parities = detail::argument_parities(args);
  std::map<int, Element> by_k;
  for (const auto& [m, c] : t.terms())
    by_k.try_emplace(static_cast<int>(m.dual_count()), Element(space)).first->second.add(m, c);
  for (const auto& [k, tk] : by_k) {
    if (n <= k) {
      out += nested_bracket(tk, args);
      continue;
    }
    for (const auto& u : unshuffles(n, k)) {
      std::vector<Element> head, tail;
      for (int i = 0; i < k; ++i) head.push_back(args[u.perm[i]]);
      for (int i = k; i < n; ++i) tail.push_back(args[u.perm[i]]);
      Element value = nested_bracket(tk, head);
      if (value.is_zero()) continue;
      Element term = wedge(value, detail::wedge_all(space, tail));
      out += Scalar(koszul_sign(parities, u.perm)) * term;
    }
  }
  return out;
}

/// Iterated adjoint action of t on a canonical primal word.
inline Element iad_word(const Element& t, const Monomial& word) {
  auto args = detail::word_arguments(t.space(), word);
  return iad_apply(t, args);
}

/// The multimap ∧ᵏV → ∧ˡV given by iad(t) on k-words (t ∈ ∧ᵏV*⊗∧ˡV).
inline MultiMap materialize(const Element& t, unsigned k) {
  MultiMap out{t.space(), k, {}};
  for (const auto& w : primal_words(*t.space(), k)) {
    Element v = iad_word(t, w);
    if (!v.is_zero()) out.table.emplace(w, std::move(v));
  }
  return out;
}

/// Coderivation extension of a k-ary map to a word of ∧ⁿV.
inline Element coder_extend(const MultiMap& lambda, const Monomial& word) {
  const SpacePtr& space = lambda.space;
  Element out(space);
  const auto gens = factors(*space, word);
  const int n = static_cast<int>(gens.size());
  const int k = static_cast<int>(lambda.arity);
  if (k > n) return out;
  std::vector<int> parities;
  for (auto g : gens) parities.push_back(space->odd(g.index) ? 1 : 0);
  for (const auto& u : unshuffles(n, k)) {
    std::vector<GeneratorRef> head, tail;
    for (int i = 0; i < k; ++i) head.push_back(gens[u.perm[i]]);
    for (int i = k; i < n; ++i) tail.push_back(gens[u.perm[i]]);
    Element value = lambda.apply(std::span<const GeneratorRef>(head));
    if (value.is_zero()) continue;
    out += Scalar(koszul_sign(parities, u.perm)) * wedge(value, canonicalize(space, tail));
  }
  return out;
}

struct DerivedBracket {
  Element value;
  bool precondition_ok = true;  // [Q,Q] = 0
};

/// {a, b} = [[Q, a], b] projected to B⁻¹.
inline DerivedBracket derived_bracket(const Element& q, const Element& a, const Element& b) {
  DerivedBracket out;
  out.precondition_ok = big_bracket(q, q).is_zero();
  Element full = big_bracket(big_bracket(q, a), b);
  out.value = Element(full.space());
  for (const auto& [m, c] : full.terms())
    if (m.length() == 1) out.value.add(m, c);
  return out;
}

/// Sparse endomorphism of ∧V: canonical primal word → image.
struct Endomorphism {
  SpacePtr space;
  std::map<Monomial, Element> table;

  bool covers(const Monomial& w) const { return table.count(w) != 0; }

  Element apply(const Element& x) const {
    Element out(space);
    for (const auto& [m, c] : x.terms()) {
      auto it = table.find(m);
      if (it == table.end()) throw InputError("operator image leaves the tabulated domain");
      out += c * it->second;
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(table.begin(), table.end(), [](const auto& e) { return e.second.is_zero(); });
  }
};

/// All canonical primal words of length ≤ cap.
inline std::vector<Monomial> words_up_to(const GradedSpace& s, unsigned cap) {
  std::vector<Monomial> out;
  for (unsigned n = 0; n <= cap; ++n) {
    auto w = primal_words(s, n);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

/// Cap on word length that captures every identity of interest: all of ∧V
/// when every generator is odd, otherwise long enough to see the full square.
inline unsigned default_cap(const GradedSpace& s, const Element& q) {
  unsigned longest = 0;
  for (const auto& [m, c] : q.terms()) longest = std::max(longest, m.dual_count());
  bool all_odd = true;
  for (std::size_t i = 0; i < s.dim(); ++i) all_odd = all_odd && s.odd(i);
  if (all_odd) return static_cast<unsigned>(s.dim());
  return std::max<unsigned>({static_cast<unsigned>(s.dim()), 2 * longest, 3});
}

/// λ = Σ coder_extend(iad l_k) on words of ∧^{≤cap}V.
inline Endomorphism lambda_operator(const Element& l, unsigned cap) {
  if (!in_subspace(Subspace::L, l)) throw InputError("lambda_operator: element is not in the subalgebra L");
  Endomorphism op{l.space(), {}};
  std::vector<MultiMap> maps;
  for (const auto& [pq, part] : bidegree_components(l))
    maps.push_back(materialize(part, static_cast<unsigned>(pq.first)));
  for (const auto& w : words_up_to(*l.space(), cap)) {
    Element img(l.space());
    for (const auto& mm : maps) img += coder_extend(mm, w);
    op.table.emplace(w, std::move(img));
  }
  return op;
}

inline Endomorphism lambda_operator(const Element& l) { return lambda_operator(l, default_cap(*l.space(), l)); }

/// Full iterated adjoint operator of Q on ∧^{≤cap}V: every bidegree
/// component acts by its unshuffle extension; components with more duals
/// than the word length leave ∧V and contribute nothing.
inline Endomorphism iad_operator(const Element& q, unsigned cap) {
  Endomorphism op{q.space(), {}};
  for (const auto& w : words_up_to(*q.space(), cap)) {
    Element img(q.space());
    const Element full = iad_word(q, w);
    for (const auto& [m, c] : full.terms())
      if (detail::pure_primal_word(m)) img.add(m, c);
    op.table.emplace(w, std::move(img));
  }
  return op;
}

/// op ∘ op on every tabulated word whose image stays inside the table.
inline Endomorphism operator_square(const Endomorphism& op) {
  Endomorphism out{op.space, {}};
  for (const auto& [w, img] : op.table) {
    bool closed = std::all_of(img.terms().begin(), img.terms().end(),
                              [&](const auto& t) { return op.covers(t.first); });
    if (closed) out.table.emplace(w, op.apply(img));
  }
  return out;
}

namespace detail {

inline std::string word_label(const GradedSpace& s, const Monomial& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto g : factors(s, w)) {
    if (!out.empty()) out += "^";
    out += s.name(g);
  }
  return out;
}

}  // namespace detail

/// Checks that φ_m = iad(l_{m+1}): ∧ᵐV → V*⊗V is an L∞-morphism into
/// (V*⊗V, [,]) (with φ₀ = l₁ acting as the differential of the target):
///
///   φ(λ(w)) = −½ Σ_{S ⊔ T = w} (−1)^{|v_S|} ε(S,T) [φ(v_S), φ(v_T)]
///
/// on every word w of length ≤ cap; the sum runs over all unshuffles.
inline Verdict check_linf_morphism(const Element& l, unsigned cap) {
  Verdict verdict;
  const SpacePtr& space = l.space();
  if (!in_subspace(Subspace::L, l)) throw InputError("check_linf_morphism: element is not in the subalgebra L");
  Element square = big_bracket(l, l);
  if (!square.is_zero()) {
    verdict.defects.emplace("precondition [L,L]=0", square);
    verdict.notes.push_back("precondition [L,L] = 0 violated");
  }
  auto phi = [&](std::span<const Element> args) { return project_bidegree(nested_bracket(l, args), 1, 1); };
  auto phi_word = [&](const Monomial& w) {
    auto args = detail::word_arguments(space, w);
    return phi(args);
  };
  Endomorphism lambda = lambda_operator(l, cap);
  std::optional<std::size_t> first_failing;
  for (const auto& [w, img] : lambda.table) {
    Element lhs(space);
    for (const auto& [m, c] : img.terms()) lhs += c * phi_word(m);
    auto args = detail::word_arguments(space, w);
    const int n = static_cast<int>(args.size());
    std::vector<int> par = detail::argument_parities(args);
    Element rhs(space);
    for (int k = 0; k <= n; ++k)
      for (const auto& u : unshuffles(n, k)) {
        std::vector<Element> s_args, t_args;
        int s_parity = 0;
        for (int i = 0; i < k; ++i) {
          s_args.push_back(args[u.perm[i]]);
          s_parity += par[u.perm[i]];
        }
        for (int i = k; i < n; ++i) t_args.push_back(args[u.perm[i]]);
        Element term = big_bracket(phi(s_args), phi(t_args));
        if (term.is_zero()) continue;
        rhs += Scalar(-sign_of_parity(s_parity) * koszul_sign(par, u.perm)) / 2 * term;
      }
    if (!(lhs == rhs) && (!first_failing || w.length() < *first_failing)) first_failing = w.length();
    verdict.require_zero("morphism " + detail::word_label(*space, w), lhs - rhs);
  }
  if (first_failing) verdict.notes.push_back("first failing n: " + std::to_string(*first_failing));
  return verdict;
}

inline Verdict check_linf_morphism(const Element& l) { return check_linf_morphism(l, default_cap(*l.space(), l)); }

}  // namespace bigbracket

#endif  // BIGBRACKET_HOMOTOPY_HPP
