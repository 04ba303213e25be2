#include <gtest/gtest.h>

#include "support.hpp"

#include "bigbracket/core.hpp"
#include "bigbracket/random.hpp"

using namespace bigbracket;

namespace {

SpacePtr ungraded3() { return std::make_shared<const GradedSpace>(GradedSpace::ungraded({"e1", "e2", "e3"})); }

Element gen(const SpacePtr& s, GeneratorRef g) { return Element::generator(s, g); }

}  // namespace

TEST(Scalar, ParsesAndNormalizes) {
  EXPECT_EQ(parse_scalar("6/4"), Scalar(3, 2));
  EXPECT_EQ(parse_scalar("-2"), Scalar(-2));
  EXPECT_EQ(parse_scalar("0/5"), Scalar(0));
  EXPECT_EQ(format_scalar(parse_scalar("0/5")), "0");
  EXPECT_EQ(format_scalar(parse_scalar("-10/4")), "-5/2");
  EXPECT_THROW(parse_scalar("1/0"), InputError);
  EXPECT_THROW(parse_scalar("1.5"), InputError);
  EXPECT_THROW(parse_scalar(""), InputError);
  EXPECT_THROW(parse_scalar("/3"), InputError);
}

TEST(GradedSpace, RejectsBadNames) {
  EXPECT_THROW(make_space({{"1x", 0}}), InputError);
  EXPECT_THROW(make_space({{"a'", 0}}), InputError);
  EXPECT_THROW(make_space({{"a", 0}, {"a", 1}}), InputError);
  EXPECT_NO_THROW(make_space({{"_a1", 0}}));
}

TEST(GradedSpace, Degrees) {
  auto s = make_space({{"x", 1}, {"y", 0}});
  EXPECT_EQ(s->internal_degree(primal(0)), 1);
  EXPECT_EQ(s->internal_degree(dual(0)), -1);
  EXPECT_EQ(s->total_degree(primal(0)), 0);
  EXPECT_EQ(s->total_degree(dual(1)), -1);
  EXPECT_FALSE(s->odd(0));
  EXPECT_TRUE(s->odd(1));
  EXPECT_THROW(s->check(primal(2)), InputError);
}

TEST(Canonicalize, Examples) {
  auto s = make_space({{"e", 0}, {"f", 0}, {"x", 1}});
  GeneratorRef ee[] = {primal(0), primal(0)};
  EXPECT_TRUE(canonicalize(s, ee).is_zero());

  GeneratorRef xx[] = {primal(2), primal(2)};
  Element x2 = canonicalize(s, xx);
  ASSERT_EQ(x2.size(), 1u);
  EXPECT_EQ(x2.terms().begin()->first[s->slot(primal(2))], 2u);
  EXPECT_EQ(x2.terms().begin()->second, 1);

  GeneratorRef fe[] = {primal(1), primal(0)};
  GeneratorRef ef[] = {primal(0), primal(1)};
  EXPECT_EQ(canonicalize(s, fe), -canonicalize(s, ef));
  EXPECT_EQ(canonicalize(s, ef).terms().begin()->second, 1);

  GeneratorRef bad[] = {primal(7)};
  EXPECT_THROW(canonicalize(s, bad), InputError);
}

TEST(Canonicalize, DualsPrecedePrimals) {
  auto s = ungraded3();
  GeneratorRef w[] = {primal(0), dual(1)};
  Element e = canonicalize(s, w);
  auto fs = factors(*s, e.terms().begin()->first);
  EXPECT_EQ(fs[0].kind, Kind::dual);
  EXPECT_EQ(e.terms().begin()->second, -1);
}

TEST(Wedge, Examples) {
  auto s = ungraded3();
  Element one = Element::scalar(s, 1);
  Element a = gen(s, dual(0)) + Scalar(3) * gen(s, primal(1));
  EXPECT_EQ(wedge(one, a), a);
  Element e = gen(s, primal(0)), f = gen(s, primal(1));
  EXPECT_EQ(wedge(e, f), -wedge(f, e));
  Element u = wedge(gen(s, dual(0)), gen(s, primal(1)));
  Element v = wedge(gen(s, dual(0)), gen(s, primal(2)));
  EXPECT_TRUE(wedge(u, v).is_zero());
  auto other = ungraded3();
  auto different = make_space({{"q", 0}});
  EXPECT_THROW(wedge(e, Element::generator(different, primal(0))), InputError);
  EXPECT_NO_THROW(wedge(e, Element::generator(other, primal(0))));
}

TEST(Degrees, Examples) {
  auto s = ungraded3();
  Element t = wedge(wedge(gen(s, dual(0)), gen(s, dual(1))), gen(s, primal(2)));
  Degrees d = degrees(t);
  EXPECT_EQ(d.external, 1);
  EXPECT_EQ(d.internal, 0);
  EXPECT_EQ(d.total, 1);
  ASSERT_TRUE(d.bidegree);
  EXPECT_EQ(*d.bidegree, std::make_pair(2, 1));

  auto g = make_space({{"x", 1}});
  Degrees dx = degrees(gen(g, primal(0)));
  EXPECT_EQ(dx.external, -1);
  EXPECT_EQ(dx.internal, 1);
  EXPECT_EQ(dx.total, 0);

  Element mixed = gen(s, primal(0)) + wedge(gen(s, primal(0)), gen(s, primal(1)));
  Degrees dm = degrees(mixed);
  EXPECT_FALSE(dm.bidegree);
  EXPECT_FALSE(dm.external);

  EXPECT_TRUE(degrees(Element(s)).any);
}

TEST(ProjectBidegree, Examples) {
  auto s = ungraded3();
  Element e = gen(s, primal(0));
  Element second = wedge(wedge(gen(s, dual(0)), gen(s, primal(0))), gen(s, primal(1)));
  Element a = e + second;
  EXPECT_EQ(project_bidegree(a, 1, 2), second);
  EXPECT_EQ(project_bidegree(a, 0, 1), e);
  EXPECT_TRUE(project_bidegree(a, 3, 3).is_zero());
}

TEST(CoreProperties, RandomElements) {
  Rng rng(11);
  for (int it = 0; it < 150; ++it) {
    SpacePtr s = random_space(rng, 4);
    Element a = random_homogeneous(rng, s, 3, 4), b = random_homogeneous(rng, s, 3, 4),
            c = random_homogeneous(rng, s, 3, 4);
    // graded commutativity
    int pa = *parity(a), pb = *parity(b);
    EXPECT_EQ(wedge(a, b), Scalar(sign_of_parity(pa * pb)) * wedge(b, a));
    // associativity
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    // projections partition
    Element sum(s);
    for (const auto& [bd, part] : bidegree_components(a)) sum += project_bidegree(a, bd.first, bd.second);
    EXPECT_EQ(sum, a);
    // bidegree additivity on single monomials
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms()) {
        Element p = wedge(Element::monomial(s, ma), Element::monomial(s, mb));
        for (const auto& [m, c2] : p.terms()) {
          EXPECT_EQ(m.dual_count(), ma.dual_count() + mb.dual_count());
          EXPECT_EQ(m.primal_count(), ma.primal_count() + mb.primal_count());
        }
      }
    // canonicalizing a canonical word is the identity
    for (const auto& [m, c2] : a.terms()) {
      auto fs = factors(*s, m);
      EXPECT_EQ(canonicalize(s, fs), Element::monomial(s, m));
    }
  }
}

TEST(CoreProperties, UngradedRepeatsVanish) {
  auto s = ungraded3();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(wedge(gen(s, primal(i)), gen(s, primal(i))).is_zero());
    EXPECT_TRUE(wedge(gen(s, dual(i)), gen(s, dual(i))).is_zero());
  }
}

TEST(Element, ZeroCoefficientsNeverStored) {
  auto s = ungraded3();
  Element a = gen(s, primal(0));
  a -= gen(s, primal(0));
  EXPECT_TRUE(a.is_zero());
  EXPECT_EQ(a.size(), 0u);
  Element b = gen(s, primal(1)) * Scalar(0);
  EXPECT_TRUE(b.is_zero());
}
