#include <doctest.h>

#include "fixtures.hpp"

using namespace lbcm;
using fx::var;
using fx::cst;

TEST_CASE("partial derivative of x^2 y") {
  const Base b = fx::plane();
  const Poly x = var(b, 0), y = var(b, 1);
  CHECK((x * x * y).partial(0) == cst(b, 2) * x * y);
  CHECK((x * x * y).partial(1) == x * x);
  CHECK(cst(b, 7).partial(0).is_zero());
}

TEST_CASE("canonical rendering is graded-lex descending") {
  const Base b = fx::plane();
  const Poly x = var(b, 0), y = var(b, 1);
  Poly p = Rational(3, 2) * x * x * y - y + cst(b, 1) + x * y * y;
  CHECK(p.to_string() == "3/2*x1^2*x2 + x1*x2^2 - x2 + 1");
  CHECK(Poly(b).to_string() == "0");
  CHECK((-x).to_string() == "-x1");
}

TEST_CASE("operands over different bases are rejected") {
  const Poly x = var(fx::plane(), 0);
  const Poly z = var(Base({"z"}), 0);
  CHECK_THROWS_AS(x + z, StructureError);
  CHECK_THROWS_AS(x * z, StructureError);
  // Zero absorbs any base.
  CHECK((x + Poly(Base({"z"}))) == x);
}

TEST_CASE("ring laws on random polynomials") {
  fx::Gen g(11);
  const Base b = fx::space3();
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = g.poly(b, 3, 4), q = g.poly(b, 3, 4), r = g.poly(b, 2, 3);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
    CHECK(p * cst(b, 1) == p);
  }
}

TEST_CASE("derivatives obey Leibniz and commute") {
  fx::Gen g(12);
  const Base b = fx::space3();
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = g.poly(b, 3, 4), q = g.poly(b, 3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK((p * q).partial(i) == p.partial(i) * q + p * q.partial(i));
      for (std::size_t j = 0; j < 3; ++j) CHECK(p.partial(i).partial(j) == p.partial(j).partial(i));
    }
  }
}

TEST_CASE("total degree and constants") {
  const Base b = fx::plane();
  const Poly x = var(b, 0), y = var(b, 1);
  CHECK((x * x * y + y).total_degree() == 3);
  CHECK(cst(b, Rational(5, 3)).is_constant());
  CHECK(cst(b, Rational(5, 3)).constant_term() == Rational(5, 3));
  CHECK((x + cst(b, 2)).constant_term() == 2);
}

TEST_CASE("unimodular polynomial matrices invert") {
  const Base b = fx::plane();
  PolyMatrix m(b, 2, 2);
  m(0, 0) = cst(b, 1);
  m(0, 1) = var(b, 0);
  m(1, 1) = cst(b, 2);
  PolyMatrix inv;
  REQUIRE(invert_over_polynomials(m, inv));
  CHECK(m * inv == PolyMatrix::identity(b, 2));
  CHECK(inv * m == PolyMatrix::identity(b, 2));

  PolyMatrix sing(b, 2, 2);
  sing(0, 0) = var(b, 0);
  sing(1, 1) = cst(b, 1);
  CHECK_FALSE(invert_over_polynomials(sing, inv));
}
