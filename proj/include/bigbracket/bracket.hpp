#ifndef BIGBRACKET_BRACKET_HPP
#define BIGBRACKET_BRACKET_HPP

// The big bracket: the canonical pairing of V and V*, extended to all of B
// by the graded Leibniz rule.

#include <set>

#include "bigbracket/core.hpp"

namespace bigbracket {

/// Value of [a, b] for generators in slots a, b: [e*_α, e_α] = 1 and
/// [e_α, e*_α] = −(−1)^{td td}, i.e. +1 for odd and −1 for even generators.
inline int pairing_sign(const GradedSpace& s, std::size_t slot_a, std::size_t slot_b) {
  const std::size_t n = s.dim();
  if (slot_a < n) return slot_b == slot_a + n ? 1 : 0;
  if (slot_b + n != slot_a) return 0;
  return s.slot_odd(slot_a) ? 1 : -1;
}

namespace detail {

inline int odd_weight(const GradedSpace& s, const Monomial& m, std::size_t from, std::size_t to) {
  int w = 0;
  for (std::size_t i = from; i < to; ++i)
    if (s.slot_odd(i)) w += m[i];
  return w;
}

/// Adds coeff · [u, v] to `out`. Each contraction pairs one factor of u with
/// its partner in v: the factor of u is moved to the right end of u, the
/// factor of v to the left end of v, and the adjacent pair is replaced by its
/// pairing value.
inline void bracket_monomials(const GradedSpace& s, const Monomial& u, const Monomial& v, const Scalar& coeff,
                              Element& out) {
  const std::size_t n = s.dim();
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (u[i] == 0) continue;
    const std::size_t j = i < n ? i + n : i - n;
    if (v[j] == 0) continue;
    int sign = 0;
    if (s.slot_odd(i)) sign += odd_weight(s, u, i + 1, 2 * n) + odd_weight(s, v, 0, j);
    Monomial ur = u, vl = v;
    --ur[i];
    --vl[j];
    auto prod = multiply(s, ur, vl);
    if (!prod) continue;
    sign += prod->first;
    Scalar c = coeff * pairing_sign(s, i, j) * static_cast<long>(u[i]) * static_cast<long>(v[j]);
    if (sign & 1) c = -c;
    out.add(prod->second, c);
  }
}

}  // namespace detail

/// [u, v] on B. Bilinear, graded antisymmetric, of total degree zero.
inline Element big_bracket(const Element& u, const Element& v) {
  Element out(common_space(u, v));
  if (u.is_zero() || v.is_zero()) return out;
  const GradedSpace& s = *out.space();
  for (const auto& [mu, cu] : u.terms())
    for (const auto& [mv, cv] : v.terms()) detail::bracket_monomials(s, mu, mv, cu * cv, out);
  return out;
}

/// ad_Q(v) = [Q, v].
inline Element adjoint(const Element& q, const Element& v) { return big_bracket(q, v); }

/// The governing subalgebras of B.
enum class Subspace { L, C, B, QB };

inline const char* subspace_name(Subspace s) {
  switch (s) {
    case Subspace::L: return "L";
    case Subspace::C: return "C";
    case Subspace::B: return "B";
    case Subspace::QB: return "QB";
  }
  return "?";
}

inline bool monomial_in(Subspace sub, const Monomial& m) {
  unsigned p = m.dual_count(), q = m.primal_count();
  switch (sub) {
    case Subspace::L: return q == 1;
    case Subspace::C: return p == 1;
    case Subspace::B: return p >= 1 && q >= 1;
    case Subspace::QB: return q >= 1;
  }
  return false;
}

inline bool in_subspace(Subspace sub, const Element& a) {
  return std::all_of(a.terms().begin(), a.terms().end(), [&](const auto& t) { return monomial_in(sub, t.first); });
}

/// Which of 𝓛, 𝓒, 𝓑, 𝓠𝓑 contain `a` (all four for zero).
inline std::set<Subspace> subspace_membership(const Element& a) {
  std::set<Subspace> out;
  for (auto s : {Subspace::L, Subspace::C, Subspace::B, Subspace::QB})
    if (in_subspace(s, a)) out.insert(s);
  return out;
}

}  // namespace bigbracket

#endif  // BIGBRACKET_BRACKET_HPP
