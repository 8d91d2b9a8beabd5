// Shared fixtures and hand-rolled generators for the test binaries.

#pragma once

#include <random>

#include "lbcm/algebroid.hpp"

namespace fx {

using namespace lbcm;

inline Base point() { return Base(); }
inline Base plane() { return Base({"x1", "x2"}); }
inline Base space3() { return Base({"x1", "x2", "x3"}); }

inline Space make_space(const std::string& name, std::size_t rank, const Base& base,
                        Variance v = Variance::primal) {
  return Space{Frame{name, rank, base}, v};
}

/// Whether the law `id` was evaluated and passed.
inline bool law_passes(const CheckReport& r, const std::string& id) {
  bool seen = false;
  for (const auto& e : r.entries())
    if (e.id == id) {
      seen = true;
      if (!e.pass) return false;
    }
  return seen;
}

inline Poly var(const Base& b, std::size_t i) { return Poly::variable(b, i); }
inline Poly cst(const Base& b, Rational q) { return Poly::constant(b, q); }

inline Section vec(const Space& s, std::vector<Poly> coeffs) {
  Section out(s, 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.add_term({static_cast<std::uint8_t>(i)}, coeffs[i]);
  return out;
}

/// Tangent bundle of the coordinate space: e_i -> d/dx_i, abelian frame.
inline Algebroid tangent(const Base& b, const std::string& name = "T") {
  Algebroid a(make_space(name, b.size(), b));
  for (std::size_t i = 0; i < b.size(); ++i) a.set_anchor(i, i, cst(b, 1));
  return a;
}

/// Two-dimensional nonabelian Lie algebra [e1, e2] = e2.
inline Algebroid g2(const std::string& name = "g") {
  Algebroid a(make_space(name, 2, point()));
  a.set_bracket(0, 1, a.basis(1));
  return a;
}

/// so(3) over a point: [e1,e2] = e3 and cyclic.
inline Algebroid so3(const std::string& name = "s") {
  Algebroid a(make_space(name, 3, point()));
  a.set_bracket(0, 1, a.basis(2));
  a.set_bracket(1, 2, a.basis(0));
  a.set_bracket(2, 0, a.basis(1));
  return a;
}

/// Action algebroid of the affine fields x1 d1 + x2 d2, d1, x2 d1 on the plane.
inline Algebroid affine_action(const std::string& name = "A") {
  const Base b = plane();
  Algebroid a(make_space(name, 3, b));
  a.set_anchor(0, 0, var(b, 0));
  a.set_anchor(0, 1, var(b, 1));
  a.set_anchor(1, 0, cst(b, 1));
  a.set_anchor(2, 0, var(b, 1));
  a.set_bracket(0, 1, -a.basis(1));
  return a;
}

/// so(3) acting on R^3 by rotations.
inline Algebroid so3_action(const std::string& name = "R") {
  const Base b = space3();
  Algebroid a(make_space(name, 3, b));
  // e1 -> x2 d3 - x3 d2, e2 -> x3 d1 - x1 d3, e3 -> x1 d2 - x2 d1
  a.set_anchor(0, 2, var(b, 1));
  a.set_anchor(0, 1, -var(b, 2));
  a.set_anchor(1, 0, var(b, 2));
  a.set_anchor(1, 2, -var(b, 0));
  a.set_anchor(2, 1, var(b, 0));
  a.set_anchor(2, 0, -var(b, 1));
  // Vector fields satisfy [X_i, X_j] = -eps_ijk X_k for this sign choice.
  a.set_bracket(0, 1, -a.basis(2));
  a.set_bracket(1, 2, -a.basis(0));
  a.set_bracket(2, 0, -a.basis(1));
  return a;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Rational coeff() {
    int num = 0;
    while (num == 0) num = uniform(-5, 5);
    Rational q(num, uniform(1, 3));
    q.canonicalize();
    return q;
  }

  Poly poly(const Base& b, int max_deg = 2, int max_terms = 3) {
    Poly out(b);
    const int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Exponents e(b.size(), 0);
      int budget = uniform(0, max_deg);
      for (std::size_t i = 0; i < b.size() && budget > 0; ++i) {
        const int k = uniform(0, budget);
        e[i] = static_cast<std::uint16_t>(k);
        budget -= k;
      }
      out += Poly::monomial(b, e, coeff());
    }
    return out;
  }

  GradedElement element(const Space& s, std::size_t deg, int max_deg = 2) {
    GradedElement out(s, deg);
    for (const auto& t : increasing_tuples(s.rank(), deg))
      if (uniform(0, 2) > 0) out.add_term(t, poly(s.base(), max_deg, 2));
    return out;
  }
};

}  // namespace fx

#include "lbcm/crossmod.hpp"

namespace fx {

/// M = R^2, omega = dx1^dx2; g = TM + R with [X+f, Y+h] = [X,Y] + X(h) - Y(f) - omega(X,Y),
/// theta = R, phi the inclusion, (X+f) > h = X(h).
inline CrossedModule symplectic() {
  const Base b = plane();
  Algebroid g(make_space("g", 3, b));
  g.set_anchor(0, 0, cst(b, 1));
  g.set_anchor(1, 1, cst(b, 1));
  g.set_bracket(0, 1, -g.basis(2));
  Algebroid theta(make_space("theta", 1, b));
  PolyMatrix phi(b, 1, 3);
  phi(0, 2) = cst(b, 1);
  return CrossedModule{theta, g, phi, ActionTable(g, theta.space())};
}

/// Adjoint action of the algebra `g` on a copy of itself, phi = identity.
inline CrossedModule adjoint(const Algebroid& g, const std::string& theta_name = "theta") {
  const Space ts = make_space(theta_name, g.rank(), g.base());
  Algebroid theta(ts);
  ActionTable act(g, ts);
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = 0; j < g.rank(); ++j) {
      theta.set_bracket_entry(i, j, reframe(g.structure(i, j), ts));
      act.set(i, j, reframe(g.structure(i, j), ts));
    }
  return CrossedModule{theta, g, PolyMatrix::identity(g.base(), g.rank()), act};
}

/// Trivial dual partner: abelian theta*, zero action on g*.
inline CrossedModule trivial_dual(const CrossedModule& cm) {
  Algebroid td(cm.theta.space().dual());
  return dualize(cm, td, ActionTable(td, cm.g.space().dual()));
}

}  // namespace fx
