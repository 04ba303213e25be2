#ifndef BIGBRACKET_RANDOM_HPP
#define BIGBRACKET_RANDOM_HPP

// Seeded generators for spaces, elements and Maurer–Cartan samples. Only the
// raw mt19937_64 stream is used (no std distributions), so output is
// identical across standard libraries.

#include <random>

#include "bigbracket/structures.hpp"

namespace bigbracket {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [0, n).
  std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(engine_() % n) : 0; }
  /// Integer in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  bool coin() { return engine_() & 1; }

  /// Nonzero rational with small numerator and denominator.
  Scalar coefficient() {
    int num = between(1, 3) * (coin() ? 1 : -1);
    int den = between(1, 2);
    Scalar q(num, den);
    q.canonicalize();
    return q;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(below(v.size()));
  }

 private:
  std::mt19937_64 engine_;
};

inline SpacePtr random_space(Rng& rng, std::size_t max_dim, int min_degree = -2, int max_degree = 2) {
  std::size_t dim = 1 + rng.below(max_dim);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < dim; ++i) gens.push_back({"g" + std::to_string(i + 1), rng.between(min_degree, max_degree)});
  return make_space(std::move(gens));
}

inline SpacePtr random_space_of_dim(Rng& rng, std::size_t dim, int min_degree = -2, int max_degree = 2) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < dim; ++i) gens.push_back({"g" + std::to_string(i + 1), rng.between(min_degree, max_degree)});
  return make_space(std::move(gens));
}

/// A random nonzero monomial with at most `max_factors` factors.
inline Monomial random_monomial(Rng& rng, const GradedSpace& s, unsigned max_factors) {
  unsigned len = static_cast<unsigned>(rng.below(max_factors + 1));
  Monomial m(s.dim());
  for (unsigned i = 0; i < len; ++i) {
    std::size_t slot = rng.below(2 * s.dim());
    if (s.slot_odd(slot) && m[slot]) continue;
    ++m[slot];
  }
  return m;
}

inline Element random_element(Rng& rng, const SpacePtr& s, unsigned max_terms, unsigned max_factors) {
  Element out(s);
  std::size_t terms = 1 + rng.below(max_terms);
  for (std::size_t i = 0; i < terms; ++i) out.add(random_monomial(rng, *s, max_factors), rng.coefficient());
  return out;
}

/// Random element homogeneous in total degree (the first monomial fixes it).
inline Element random_homogeneous(Rng& rng, const SpacePtr& s, unsigned max_terms, unsigned max_factors) {
  Element out(s);
  Monomial first = random_monomial(rng, *s, max_factors);
  int td = total_degree(*s, first);
  out.add(first, rng.coefficient());
  std::size_t extra = rng.below(max_terms);
  for (std::size_t tries = 0; extra > 0 && tries < 40; ++tries) {
    Monomial m = random_monomial(rng, *s, max_factors);
    if (total_degree(*s, m) != td) continue;
    out.add(m, rng.coefficient());
    --extra;
  }
  return out;
}

/// Monomials of total degree `td` and length in [2, max_len] lying in `sub`.
inline std::vector<Monomial> monomial_pool(const GradedSpace& s, Subspace sub, int td, unsigned max_len,
                                           unsigned min_len = 2) {
  std::vector<Monomial> out;
  for (unsigned p = 0; p <= max_len; ++p)
    for (unsigned q = 0; p + q <= max_len; ++q) {
      if (p + q < min_len) continue;
      for (const auto& m : monomials_of_bidegree(s, p, q)) {
        if (total_degree(s, m) != td || !monomial_in(sub, m)) continue;
        out.push_back(m);
      }
    }
  return out;
}

/// exp(ad_g) q, if the series terminates within `max_steps`.
inline std::optional<Element> gauge_transform(const Element& g, const Element& q, unsigned max_steps = 12,
                                              std::size_t max_terms = 400) {
  Element out = q, term = q;
  for (unsigned k = 1; k <= max_steps; ++k) {
    term = big_bracket(g, term) * Scalar(1, k);
    if (term.is_zero()) return out;
    if (term.size() > max_terms) return std::nullopt;
    out += term;
  }
  return std::nullopt;
}

/// A random Maurer–Cartan element of total degree 1 in `sub`: sparse
/// rejection sampling followed by a gauge transform exp(ad_g) with g of total
/// degree 0 in the same subalgebra (with at least 3 factors, so ad_g raises
/// length and tends to be nilpotent). Returns nullopt if no sample was found.
inline std::optional<Element> random_mc(Rng& rng, const SpacePtr& s, Subspace sub, unsigned max_len = 4,
                                        unsigned attempts = 200) {
  auto pool = monomial_pool(*s, sub, 1, max_len);
  if (pool.empty()) return std::nullopt;
  auto gauge_pool = monomial_pool(*s, sub == Subspace::C ? Subspace::C : Subspace::L, 0, max_len, 3);
  if (sub == Subspace::C) {
    gauge_pool.erase(std::remove_if(gauge_pool.begin(), gauge_pool.end(),
                                    [](const Monomial& m) { return m.primal_count() < 2; }),
                     gauge_pool.end());
  }
  for (unsigned a = 0; a < attempts; ++a) {
    Element q(s);
    std::size_t terms = 1 + rng.below(2);
    for (std::size_t i = 0; i < terms; ++i) q.add(rng.pick(pool), rng.coefficient());
    if (q.is_zero() || !big_bracket(q, q).is_zero()) continue;
    if (!gauge_pool.empty() && rng.below(4) != 0) {
      Element g = Element::monomial(s, rng.pick(gauge_pool), rng.coefficient());
      auto moved = gauge_transform(g, q);
      if (moved && in_subspace(sub, *moved) && big_bracket(*moved, *moved).is_zero()) q = *moved;
    }
    return q;
  }
  return std::nullopt;
}

/// Adds random total-degree-1 monomials of `sub` to q until [q, q] ≠ 0.
inline std::optional<Element> perturb_out_of_mc(Rng& rng, const Element& q, Subspace sub, unsigned max_len = 4,
                                                unsigned attempts = 100) {
  auto pool = monomial_pool(q.graded_space(), sub, 1, max_len);
  if (pool.empty()) return std::nullopt;
  for (unsigned a = 0; a < attempts; ++a) {
    Element p = q;
    p.add(rng.pick(pool), rng.coefficient());
    if (!big_bracket(p, p).is_zero()) return p;
  }
  return std::nullopt;
}

}  // namespace bigbracket

#endif  // BIGBRACKET_RANDOM_HPP
