#ifndef BIGBRACKET_CORE_HPP
#define BIGBRACKET_CORE_HPP

// Graded vector spaces, exact scalars, sign-canonical monomials and sparse
// elements of B = ∧V* ⊗ ∧V, together with the wedge product and degrees.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bigbracket {

/// Raised on malformed user input: unknown generators, mismatched spaces,
/// schema violations. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called outside its documented precondition
/// (for instance a derived bracket with [Q,Q] != 0).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalars

/// Exact rational. mpq_class keeps values canonical after every operation.
using Scalar = mpq_class;

/// Parses "p/q", "p" with optional sign. Rejects zero denominators.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') pos = 1;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (std::size_t i = pos; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash) throw InputError("malformed rational literal '" + s + "'");
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw InputError("malformed rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw InputError("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Scalar value;
  if (seen_slash) {
    auto slash = s.find('/');
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = Scalar(mpz_class(s.substr(0, slash)), den);
  } else {
    value = Scalar(mpz_class(s));
  }
  value.canonicalize();
  return value;
}

inline std::string format_scalar(const Scalar& x) { return x.get_str(); }

inline int sign_of_parity(long long exponent) { return (exponent & 1) ? -1 : 1; }

// ---------------------------------------------------------------------------
// Graded space

struct Generator {
  std::string name;
  int degree = 0;
  bool operator==(const Generator&) const = default;
};

enum class Kind : std::uint8_t { dual = 0, primal = 1 };

/// A generator of V ⊕ V*: the primal e_α or the dual e*_α.
struct GeneratorRef {
  Kind kind = Kind::primal;
  std::size_t index = 0;
  bool operator==(const GeneratorRef&) const = default;
};

inline GeneratorRef primal(std::size_t i) { return {Kind::primal, i}; }
inline GeneratorRef dual(std::size_t i) { return {Kind::dual, i}; }

inline bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(name[0])) return false;
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

/// V = ⊕ V^a with a named basis. Duals are implicit: e*_α has internal
/// degree −deg(e_α). Every generator of V ⊕ V* sits one external unit below
/// zero, so its total degree is internal − 1.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<Generator> generators) : gens_(std::move(generators)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (!valid_identifier(gens_[i].name))
        throw InputError("invalid generator name '" + gens_[i].name + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (gens_[j].name == gens_[i].name)
          throw InputError("duplicate generator name '" + gens_[i].name + "'");
    }
  }

  /// Convenience: generators named by `names` with all degrees zero.
  static GradedSpace ungraded(const std::vector<std::string>& names) {
    std::vector<Generator> g;
    for (const auto& n : names) g.push_back({n, 0});
    return GradedSpace(std::move(g));
  }

  std::size_t dim() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    return std::nullopt;
  }

  void check(GeneratorRef g) const {
    if (g.index >= gens_.size())
      throw InputError("generator index " + std::to_string(g.index) + " out of range for a space of dimension " +
                       std::to_string(gens_.size()));
  }

  int internal_degree(GeneratorRef g) const {
    check(g);
    int d = gens_[g.index].degree;
    return g.kind == Kind::primal ? d : -d;
  }
  int total_degree(GeneratorRef g) const { return internal_degree(g) - 1; }

  /// Odd total degree ⇔ even internal degree; e_α and e*_α share parity.
  bool odd(std::size_t index) const { return (gens_.at(index).degree & 1) == 0; }

  bool ungraded_space() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.degree == 0; });
  }

  /// Exponent-vector slot: duals occupy [0, dim), primals [dim, 2 dim).
  std::size_t slot(GeneratorRef g) const {
    check(g);
    return g.kind == Kind::dual ? g.index : gens_.size() + g.index;
  }
  GeneratorRef ref(std::size_t slot) const {
    std::size_t n = gens_.size();
    return slot < n ? dual(slot) : primal(slot - n);
  }
  bool slot_odd(std::size_t slot) const { return odd(slot % gens_.size()); }
  int slot_internal_degree(std::size_t slot) const { return internal_degree(ref(slot)); }

  std::string name(GeneratorRef g) const {
    check(g);
    return gens_[g.index].name + (g.kind == Kind::dual ? "'" : "");
  }

  bool operator==(const GradedSpace&) const = default;

 private:
  std::vector<Generator> gens_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(std::vector<Generator> generators) {
  return std::make_shared<const GradedSpace>(std::move(generators));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Monomials

/// Canonical wedge word. Stored as an exponent vector over 2·dim slots
/// (duals first, then primals, ascending index inside each kind). Odd
/// generators carry exponent at most 1.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t dim) : exps_(2 * dim, 0) {}

  std::size_t dim() const { return exps_.size() / 2; }
  std::size_t slots() const { return exps_.size(); }
  Exponent operator[](std::size_t slot) const { return exps_[slot]; }
  Exponent& operator[](std::size_t slot) { return exps_[slot]; }

  unsigned dual_count() const {
    unsigned p = 0;
    for (std::size_t i = 0; i < dim(); ++i) p += exps_[i];
    return p;
  }
  unsigned primal_count() const {
    unsigned q = 0;
    for (std::size_t i = dim(); i < exps_.size(); ++i) q += exps_[i];
    return q;
  }
  unsigned length() const { return dual_count() + primal_count(); }
  bool empty() const { return length() == 0; }

  /// Factors in canonical order, repeated according to exponent.
  std::vector<std::size_t> factor_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < exps_.size(); ++s)
      for (Exponent k = 0; k < exps_[s]; ++k) out.push_back(s);
    return out;
  }

  /// Degree-lexicographic: shorter words first, then more duals first, then
  /// lower-index generators first.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    unsigned la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    unsigned pa = a.dual_count(), pb = b.dual_count();
    if (pa != pb) return pa > pb;
    return b.exps_ < a.exps_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<Exponent> exps_;
};

/// Parity (mod 2 total degree) of a monomial.
inline int parity(const GradedSpace& s, const Monomial& m) {
  int p = 0;
  for (std::size_t i = 0; i < m.slots(); ++i)
    if (s.slot_odd(i)) p += m[i];
  return p & 1;
}

/// Internal degree of a monomial.
inline int internal_degree(const GradedSpace& s, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.slots(); ++i) d += static_cast<int>(m[i]) * s.slot_internal_degree(i);
  return d;
}

inline int external_degree(const Monomial& m) { return static_cast<int>(m.length()) - 2; }
inline int total_degree(const GradedSpace& s, const Monomial& m) {
  return internal_degree(s, m) + external_degree(m);
}

/// Product of canonical monomials: sign exponent (0/1) and the product, or
/// nullopt when an odd generator would repeat.
inline std::optional<std::pair<int, Monomial>> multiply(const GradedSpace& s, const Monomial& a,
                                                        const Monomial& b) {
  const std::size_t slots = a.slots();
  Monomial out = a;
  int sign = 0;
  // Moving each factor of b leftwards past the factors of a in later slots.
  long long odd_after = 0;
  for (std::size_t j = slots; j-- > 0;) {
    if (b[j] != 0) {
      if (s.slot_odd(j)) {
        if (a[j] + b[j] > 1) return std::nullopt;
        sign += static_cast<int>((odd_after * b[j]) & 1);
      }
      out[j] = static_cast<Monomial::Exponent>(a[j] + b[j]);
    }
    if (s.slot_odd(j)) odd_after += a[j];
  }
  return std::make_pair(sign & 1, std::move(out));
}

// ---------------------------------------------------------------------------
// Elements

/// Sparse rational combination of canonical monomials over a fixed space.
/// The empty map is zero; the empty monomial spans B⁻² = 𝕂.
class Element {
 public:
  using Terms = std::map<Monomial, Scalar>;

  Element() = default;
  explicit Element(SpacePtr space) : space_(std::move(space)) {}

  static Element scalar(SpacePtr space, const Scalar& c) {
    Element e(space);
    e.add(Monomial(space->dim()), c);
    return e;
  }
  static Element generator(SpacePtr space, GeneratorRef g, const Scalar& c = 1) {
    Monomial m(space->dim());
    m[space->slot(g)] = 1;
    Element e(space);
    e.add(m, c);
    return e;
  }
  static Element monomial(SpacePtr space, Monomial m, const Scalar& c = 1) {
    Element e(std::move(space));
    e.add(std::move(m), c);
    return e;
  }

  const SpacePtr& space() const { return space_; }
  const GradedSpace& graded_space() const { return *space_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const Monomial& m, Scalar c) {
    c.canonicalize();
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Element& operator+=(const Element& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Element& operator*=(const Scalar& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Scalar(-1); }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return same_space(a.space_, b.space_) && a.terms_ == b.terms_;
  }

 private:
  void adopt(const Element& o) {
    if (!space_) {
      space_ = o.space_;
    } else if (o.space_ && !same_space(space_, o.space_)) {
      throw InputError("elements live over different graded spaces");
    }
  }

  SpacePtr space_;
  Terms terms_;
};

inline void require_same_space(const Element& a, const Element& b) {
  if (a.space() && b.space() && !same_space(a.space(), b.space()))
    throw InputError("elements live over different graded spaces");
}

inline SpacePtr common_space(const Element& a, const Element& b) {
  require_same_space(a, b);
  return a.space() ? a.space() : b.space();
}

/// coeff · (sorted word), with the Koszul sign of the sorting permutation.
inline Element canonicalize(const SpacePtr& space, std::span<const GeneratorRef> word, const Scalar& coeff = 1) {
  Monomial m(space->dim());
  int sign = 0;
  for (const auto& g : word) {
    Monomial single(space->dim());
    single[space->slot(g)] = 1;
    auto prod = multiply(*space, m, single);
    if (!prod) return Element(space);
    sign ^= prod->first;
    m = std::move(prod->second);
  }
  Element out(space);
  out.add(m, sign ? Scalar(-coeff) : coeff);
  return out;
}

/// Exterior (graded-commutative) product of B.
inline Element wedge(const Element& a, const Element& b) {
  Element out(common_space(a, b));
  if (a.is_zero() || b.is_zero()) return out;
  const GradedSpace& s = *out.space();
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = multiply(s, ma, mb);
      if (!prod) continue;
      Scalar c = ca * cb;
      if (prod->first) c = -c;
      out.add(prod->second, c);
    }
  return out;
}

/// Degrees of an element. A field is set iff the element is homogeneous in
/// that grading; the zero element sets `any` and leaves the fields empty,
/// meaning every value is admissible.
struct Degrees {
  bool any = false;
  std::optional<int> internal;
  std::optional<int> external;
  std::optional<int> total;
  std::optional<std::pair<int, int>> bidegree;
};

inline Degrees degrees(const Element& a) {
  Degrees d;
  if (a.is_zero()) {
    d.any = true;
    return d;
  }
  const GradedSpace& s = a.graded_space();
  bool first = true;
  bool hi = true, he = true, ht = true, hb = true;
  int i0 = 0, e0 = 0, t0 = 0;
  std::pair<int, int> b0{};
  for (const auto& [m, c] : a.terms()) {
    int i = internal_degree(s, m), e = external_degree(m);
    std::pair<int, int> b{static_cast<int>(m.dual_count()), static_cast<int>(m.primal_count())};
    if (first) {
      i0 = i, e0 = e, t0 = i + e, b0 = b;
      first = false;
      continue;
    }
    hi = hi && i == i0;
    he = he && e == e0;
    ht = ht && i + e == t0;
    hb = hb && b == b0;
  }
  if (hi) d.internal = i0;
  if (he) d.external = e0;
  if (ht) d.total = t0;
  if (hb) d.bidegree = b0;
  return d;
}

/// Parity of a homogeneous-parity element (0 for zero); nullopt when mixed.
inline std::optional<int> parity(const Element& a) {
  if (a.is_zero()) return 0;
  std::optional<int> p;
  for (const auto& [m, c] : a.terms()) {
    int q = parity(a.graded_space(), m);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p;
}

inline Element project_bidegree(const Element& a, int p, int q) {
  Element out(a.space());
  if (p < 0 || q < 0) return out;
  for (const auto& [m, c] : a.terms())
    if (static_cast<int>(m.dual_count()) == p && static_cast<int>(m.primal_count()) == q) out.add(m, c);
  return out;
}

/// Split into bidegree components (p, q) → part.
inline std::map<std::pair<int, int>, Element> bidegree_components(const Element& a) {
  std::map<std::pair<int, int>, Element> out;
  for (const auto& [m, c] : a.terms()) {
    std::pair<int, int> key{static_cast<int>(m.dual_count()), static_cast<int>(m.primal_count())};
    auto it = out.try_emplace(key, Element(a.space())).first;
    it->second.add(m, c);
  }
  return out;
}

/// Terms of total degree `td`.
inline Element project_total_degree(const Element& a, int td) {
  Element out(a.space());
  for (const auto& [m, c] : a.terms())
    if (total_degree(a.graded_space(), m) == td) out.add(m, c);
  return out;
}

/// Canonical primal words (pure ∧V monomials) of length exactly n.
inline std::vector<Monomial> primal_words(const GradedSpace& s, unsigned n) {
  std::vector<Monomial> out;
  const std::size_t dim = s.dim();
  Monomial m(dim);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == dim) {
      if (left == 0) out.push_back(m);
      return;
    }
    unsigned cap = s.odd(i) ? std::min(left, 1u) : left;
    for (unsigned k = 0; k <= cap; ++k) {
      m[dim + i] = static_cast<Monomial::Exponent>(k);
      self(self, i + 1, left - k);
    }
    m[dim + i] = 0;
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  return out;
}

/// All canonical monomials of bidegree (p, q).
inline std::vector<Monomial> monomials_of_bidegree(const GradedSpace& s, unsigned p, unsigned q) {
  std::vector<Monomial> duals;
  {
    const std::size_t dim = s.dim();
    Monomial m(dim);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (i == dim) {
        if (left == 0) duals.push_back(m);
        return;
      }
      unsigned cap = s.odd(i) ? std::min(left, 1u) : left;
      for (unsigned k = 0; k <= cap; ++k) {
        m[i] = static_cast<Monomial::Exponent>(k);
        self(self, i + 1, left - k);
      }
      m[i] = 0;
    };
    rec(rec, 0, p);
  }
  std::vector<Monomial> out;
  for (const auto& d : duals)
    for (const auto& w : primal_words(s, q)) {
      Monomial m = d;
      for (std::size_t i = s.dim(); i < m.slots(); ++i) m[i] = w[i];
      out.push_back(m);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Expands a canonical monomial into its factor sequence of generator refs.
inline std::vector<GeneratorRef> factors(const GradedSpace& s, const Monomial& m) {
  std::vector<GeneratorRef> out;
  for (auto slot : m.factor_slots()) out.push_back(s.ref(slot));
  return out;
}

}  // namespace bigbracket

#endif  // BIGBRACKET_CORE_HPP
