#ifndef BIGBRACKET_GEOM_HPP
#define BIGBRACKET_GEOM_HPP

// Polynomial differential operators on V[1]: coordinates x^α, derivative
// symbols ξ^α, and the coordinate graded Poisson bracket. Kept independent
// of the big-bracket engine so it can serve as an oracle for it.

#include "bigbracket/bracket.hpp"
#include "bigbracket/verdict.hpp"

namespace bigbracket {

namespace geom {

/// Symbol s: 2α is x^α, 2α + 1 is ξ^α. Words are exponent vectors in this
/// interleaved order x¹ ξ¹ x² ξ² …
using Word = std::vector<unsigned>;

class CoordOperator {
 public:
  CoordOperator() = default;
  explicit CoordOperator(SpacePtr space) : space_(std::move(space)) {}

  static CoordOperator constant(SpacePtr space, const Scalar& c) {
    CoordOperator out(space);
    out.add(Word(2 * out.space_->dim(), 0), c);
    return out;
  }
  static CoordOperator x(SpacePtr space, std::size_t a) { return symbol(std::move(space), 2 * a); }
  static CoordOperator xi(SpacePtr space, std::size_t a) { return symbol(std::move(space), 2 * a + 1); }

  const SpacePtr& space() const { return space_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool symbol_odd(std::size_t s) const { return space_->odd(s / 2); }

  int word_parity(const Word& w) const {
    int p = 0;
    for (std::size_t s = 0; s < w.size(); ++s)
      if (symbol_odd(s)) p += static_cast<int>(w[s]);
    return p & 1;
  }

  void add(const Word& w, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CoordOperator& operator+=(const CoordOperator& o) {
    adopt(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  friend CoordOperator operator+(CoordOperator a, const CoordOperator& b) { return a += b; }
  friend CoordOperator operator-(CoordOperator a, const CoordOperator& b) { return a += b * Scalar(-1); }
  friend CoordOperator operator*(CoordOperator a, const Scalar& c) {
    if (c == 0) a.terms_.clear();
    for (auto& [w, v] : a.terms_) v *= c;
    return a;
  }
  friend bool operator==(const CoordOperator& a, const CoordOperator& b) { return a.terms_ == b.terms_; }

  /// Product of words: concatenate, then sort into interleaved order.
  std::optional<std::pair<int, Word>> multiply_words(const Word& a, const Word& b) const {
    Word out = a;
    int sign = 0;
    for (std::size_t s = 0; s < b.size(); ++s) {
      if (!b[s]) continue;
      if (symbol_odd(s)) {
        if (a[s]) return std::nullopt;
        // each factor of b at s passes the odd factors of a at larger symbols
        int passed = 0;
        for (std::size_t t = s + 1; t < a.size(); ++t)
          if (symbol_odd(t)) passed += static_cast<int>(a[t]);
        sign += passed;
      }
      out[s] += b[s];
    }
    return std::make_pair(sign & 1, out);
  }

  friend CoordOperator operator*(const CoordOperator& a, const CoordOperator& b) {
    CoordOperator out(a.space_ ? a.space_ : b.space_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        auto prod = out.multiply_words(wa, wb);
        if (!prod) continue;
        Scalar v = ca * cb;
        out.add(prod->second, prod->first ? Scalar(-v) : v);
      }
    return out;
  }

  /// Left derivative ∂→/∂s: the factor is brought to the front.
  CoordOperator left_derivative(std::size_t s) const {
    CoordOperator out(space_);
    for (const auto& [w, c] : terms_) {
      if (!w[s]) continue;
      int passed = 0;
      if (symbol_odd(s))
        for (std::size_t t = 0; t < s; ++t)
          if (symbol_odd(t)) passed += static_cast<int>(w[t]);
      Word r = w;
      --r[s];
      Scalar v = c * static_cast<long>(w[s]);
      out.add(r, (passed & 1) ? -v : v);
    }
    return out;
  }

  /// Right derivative ∂←/∂s: the factor is brought to the back.
  CoordOperator right_derivative(std::size_t s) const {
    CoordOperator out(space_);
    for (const auto& [w, c] : terms_) {
      if (!w[s]) continue;
      int passed = 0;
      if (symbol_odd(s))
        for (std::size_t t = s + 1; t < w.size(); ++t)
          if (symbol_odd(t)) passed += static_cast<int>(w[t]);
      Word r = w;
      --r[s];
      Scalar v = c * static_cast<long>(w[s]);
      out.add(r, (passed & 1) ? -v : v);
    }
    return out;
  }

  /// Parity of a homogeneous operator (0 for zero).
  int parity() const {
    std::optional<int> p;
    for (const auto& [w, c] : terms_) {
      int q = word_parity(w);
      if (p && *p != q) throw InputError("operator is not of homogeneous parity");
      p = q;
    }
    return p.value_or(0);
  }

 private:
  static CoordOperator symbol(SpacePtr space, std::size_t s) {
    CoordOperator out(space);
    Word w(2 * out.space_->dim(), 0);
    w[s] = 1;
    out.add(w, 1);
    return out;
  }

  void adopt(const CoordOperator& o) {
    if (!space_) space_ = o.space_;
    else if (o.space_ && !same_space(space_, o.space_)) throw InputError("operators over different spaces");
  }

  SpacePtr space_;
  std::map<Word, Scalar> terms_;
};

/// e*_α ↦ x^α, e_α ↦ ξ^α, extended multiplicatively.
inline CoordOperator translate(const Element& a) {
  const SpacePtr& space = a.space();
  CoordOperator out(space);
  for (const auto& [m, c] : a.terms()) {
    CoordOperator term = CoordOperator::constant(space, c);
    for (auto g : factors(*space, m))
      term = term * (g.kind == Kind::dual ? CoordOperator::x(space, g.index) : CoordOperator::xi(space, g.index));
    out += term;
  }
  return out;
}

/// Inverse of translate.
inline Element untranslate(const CoordOperator& e) {
  const SpacePtr& space = e.space();
  Element out(space);
  for (const auto& [w, c] : e.terms()) {
    std::vector<GeneratorRef> word;
    for (std::size_t s = 0; s < w.size(); ++s)
      for (unsigned k = 0; k < w[s]; ++k) word.push_back(s % 2 == 0 ? dual(s / 2) : primal(s / 2));
    out += canonicalize(space, word, c);
  }
  return out;
}

/// {E, F} = Σ_α (E ∂←_{x^α})(∂→_{ξ^α} F) − (−1)^{|E||F|} (F ∂←_{x^α})(∂→_{ξ^α} E),
/// extended bilinearly over homogeneous parts.
inline CoordOperator poisson(const CoordOperator& e, const CoordOperator& f) {
  SpacePtr space = e.space() ? e.space() : f.space();
  CoordOperator out(space);
  if (e.is_zero() || f.is_zero()) return out;
  auto split = [](const CoordOperator& op) {
    std::array<CoordOperator, 2> parts{CoordOperator(op.space()), CoordOperator(op.space())};
    for (const auto& [w, c] : op.terms()) parts[op.word_parity(w)].add(w, c);
    return parts;
  };
  auto es = split(e), fs = split(f);
  for (int pe = 0; pe < 2; ++pe)
    for (int pf = 0; pf < 2; ++pf) {
      const auto &E = es[pe], &F = fs[pf];
      if (E.is_zero() || F.is_zero()) continue;
      for (std::size_t a = 0; a < space->dim(); ++a) {
        out += E.right_derivative(2 * a) * F.left_derivative(2 * a + 1);
        CoordOperator second = F.right_derivative(2 * a) * E.left_derivative(2 * a + 1);
        out += second * Scalar(pe && pf ? 1 : -1);
      }
    }
  return out;
}

namespace detail {

inline int calibrate_epsilon() {
  auto space = std::make_shared<const GradedSpace>(GradedSpace::ungraded({"u"}));
  Element u_dual = Element::generator(space, dual(0)), u = Element::generator(space, primal(0));
  CoordOperator lhs = translate(big_bracket(u_dual, u));
  CoordOperator rhs = poisson(translate(u_dual), translate(u));
  if (lhs == rhs) return 1;
  if (lhs == rhs * Scalar(-1)) return -1;
  throw std::logic_error("geom: calibration pair does not determine a sign");
}

}  // namespace detail

/// The global sign relating translate∘[·,·] and poisson∘(translate × translate).
inline const int epsilon = detail::calibrate_epsilon();

/// translate([u, v]) = ε · poisson(translate(u), translate(v)).
inline Verdict oracle_check(const Element& u, const Element& v) {
  Verdict out;
  CoordOperator lhs = translate(big_bracket(u, v));
  CoordOperator rhs = poisson(translate(u), translate(v)) * Scalar(epsilon);
  out.require_zero("poisson mismatch", untranslate(lhs - rhs));
  return out;
}

}  // namespace geom

}  // namespace bigbracket

#endif  // BIGBRACKET_GEOM_HPP
