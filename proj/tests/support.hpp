#ifndef BIGBRACKET_TEST_SUPPORT_HPP
#define BIGBRACKET_TEST_SUPPORT_HPP

#include <ostream>
#include <string>

#include "bigbracket/expr.hpp"
#include "bigbracket/io.hpp"
#include "bigbracket/random.hpp"

namespace bigbracket {

inline void PrintTo(const Element& e, std::ostream* os) { *os << print_element(e); }

}  // namespace bigbracket

namespace support {

using namespace bigbracket;

#ifdef BIGBRACKET_FIXTURES
inline std::string fixture(const std::string& name) { return std::string(BIGBRACKET_FIXTURES) + "/" + name; }

inline SpacePtr fixture_space(const std::string& name) { return space_from_json(read_json_file(fixture(name))); }

inline StructurePackage fixture_package(const SpacePtr& s, const std::string& name) {
  return package_from_json(s, read_json_file(fixture(name)));
}
#endif

inline SpacePtr ungraded_space(std::vector<std::string> names) {
  return std::make_shared<const GradedSpace>(GradedSpace::ungraded(names));
}

/// Monomials of ∧ᵏV (no duals) of the given internal degree.
inline std::vector<Monomial> primal_of_degree(const GradedSpace& s, unsigned k, int degree) {
  std::vector<Monomial> out;
  for (const auto& m : monomials_of_bidegree(s, 0, k))
    if (internal_degree(s, m) == degree) out.push_back(m);
  return out;
}

/// Sparse random element of the span of `pool`, each basis vector kept with
/// probability 1/`sparsity`.
inline Element sparse_combination(Rng& rng, const SpacePtr& s, const std::vector<Monomial>& pool, unsigned sparsity) {
  Element out(s);
  for (const auto& m : pool)
    if (rng.below(sparsity) == 0) out.add(m, Scalar(rng.between(-1, 1)));
  return out;
}

/// Random homogeneous strict constants (total degree 1) on s.
inline StrictConstants random_constants(Rng& rng, const SpacePtr& s, bool bracket, bool cobracket, bool phi,
                                        unsigned sparsity = 3) {
  StrictConstants k{s, {}, {}, Element(s)};
  const std::size_t n = s->dim();
  if (bracket)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        if (a == b && s->odd(a)) continue;
        int d = s->generator(a).degree + s->generator(b).degree;
        Element v = sparse_combination(rng, s, primal_of_degree(*s, 1, d), sparsity);
        if (!v.is_zero()) k.bracket.emplace(std::make_pair(a, b), v);
      }
  if (cobracket)
    for (std::size_t a = 0; a < n; ++a) {
      Element v = sparse_combination(rng, s, primal_of_degree(*s, 2, s->generator(a).degree), sparsity);
      if (!v.is_zero()) k.cobracket.emplace(a, v);
    }
  if (phi) k.phi = sparse_combination(rng, s, primal_of_degree(*s, 3, 0), 1);
  return k;
}

inline StructurePackage package_of(const StrictConstants& k) {
  StructurePackage p(k.space);
  p.add(2, 1, build_bracket_tensor(k.space, k.bracket));
  p.add(1, 2, build_cobracket_tensor(k.space, k.cobracket));
  p.add(0, 3, k.phi);
  return p;
}

}  // namespace support

#endif  // BIGBRACKET_TEST_SUPPORT_HPP
