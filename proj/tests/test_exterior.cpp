#include <doctest.h>

#include "fixtures.hpp"

using namespace lbcm;

namespace {

GradedElement sgn(std::size_t a, std::size_t b, const GradedElement& x) {
  return (a * b) % 2 ? -x : x;
}

}  // namespace

TEST_CASE("sorting indices tracks the permutation sign") {
  IndexTuple t{2, 0, 1};
  CHECK(sort_with_sign(t) == 1);
  CHECK(t == IndexTuple{0, 1, 2});
  IndexTuple u{1, 0};
  CHECK(sort_with_sign(u) == -1);
  IndexTuple w{1, 1};
  CHECK(sort_with_sign(w) == 0);
}

TEST_CASE("determinant convention for forms") {
  const Space v = fx::make_space("V", 3, fx::point(), Variance::dual);
  GradedElement f = wedge(GradedElement::basis(v, 0), GradedElement::basis(v, 1));
  CHECK(f.evaluate({0, 1}) == Poly::constant(fx::point(), 1));
  CHECK(f.evaluate({1, 0}) == Poly::constant(fx::point(), -1));
  CHECK(f.to_string() == "e1*^e2*");
  // iota_{e2}(e1*^e2*) = -e1*
  GradedElement r = contract(GradedElement::basis(v.dual(), 1), f);
  CHECK(r == -GradedElement::basis(v, 0));
}

TEST_CASE("pairing of dual bases is the identity") {
  const Space v = fx::make_space("V", 3, fx::point());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(pair(GradedElement::basis(v, i), GradedElement::basis(v.dual(), j)) ==
            Poly::constant(fx::point(), i == j ? 1 : 0));
}

TEST_CASE("mixing variances or frames is rejected") {
  const Space v = fx::make_space("V", 2, fx::point());
  const Space w = fx::make_space("W", 2, fx::point());
  CHECK_THROWS_AS(GradedElement::basis(v, 0) + GradedElement::basis(w, 0), StructureError);
  CHECK_THROWS_AS(GradedElement::basis(v, 0) + GradedElement::basis(v.dual(), 0), StructureError);
  CHECK_THROWS_AS(contract(GradedElement::basis(v, 0), GradedElement::basis(w.dual(), 0)), StructureError);
  CHECK(v.dual().dual() == v);
}

TEST_CASE("wedge is associative and graded commutative") {
  fx::Gen g(21);
  const Space v = fx::make_space("V", 4, fx::plane());
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = g.uniform(0, 2), q = g.uniform(0, 2), r = g.uniform(0, 1);
    const GradedElement a = g.element(v, p), b = g.element(v, q), c = g.element(v, r);
    CHECK(wedge(a, b) == sgn(p, q, wedge(b, a)));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("contraction is a nilpotent antiderivation") {
  fx::Gen g(22);
  const Space v = fx::make_space("V", 4, fx::plane(), Variance::dual);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = g.uniform(1, 2), q = g.uniform(1, 2);
    const GradedElement a = g.element(v, p), b = g.element(v, q);
    const GradedElement x = g.element(v.dual(), 1), y = g.element(v.dual(), 1);
    GradedElement lhs = contract(x, wedge(a, b));
    GradedElement rhs = wedge(contract(x, a), b) + sgn(p, 1, wedge(a, contract(x, b)));
    CHECK(lhs == rhs);
    const GradedElement ab = wedge(a, b);
    if (ab.degree() >= 2) {
      CHECK(contract(x, contract(x, ab)).is_zero());
      CHECK(contract(x, contract(y, ab)) == -contract(y, contract(x, ab)));
    }
  }
}

TEST_CASE("full pairing matches iterated contraction") {
  fx::Gen g(23);
  const Space v = fx::make_space("V", 3, fx::plane());
  for (int trial = 0; trial < 50; ++trial) {
    const GradedElement x = g.element(v, 1), y = g.element(v, 1);
    const GradedElement w = g.element(v.dual(), 2);
    // (x^y)(w) = w(x, y) = iota_y iota_x w
    const GradedElement s = contract(y, contract(x, w));
    CHECK(pair_full(wedge(x, y), w) == s.component({}));
  }
}

TEST_CASE("embedding and restriction of direct-sum blocks") {
  const Space a = fx::make_space("g", 2, fx::point());
  const Space b = fx::make_space("t", 1, fx::point(), Variance::dual);
  const Frame sum = direct_sum_frame({a, b});
  CHECK(sum.name == "g_t_star");
  CHECK(sum.rank == 3);
  const Space s{sum, Variance::primal};
  GradedElement x = embed(GradedElement::basis(b, 0), s, 2);
  CHECK(x == GradedElement::basis(s, 2));
  CHECK(restrict_block(x, b, 2) == GradedElement::basis(b, 0));
  CHECK(restrict_block(x, a, 0).is_zero());
}
