#include "lbcm/bicrossed.hpp"

namespace lbcm {

namespace {

using TripleFn = std::function<void(std::size_t, std::size_t, std::size_t, const Section&, const Section&,
                                    const Section&, const std::string&)>;

// Basis triples over three spaces, each also with one slot scaled by a coordinate.
void scaled_triples(const Space& s1, const Space& s2, const Space& s3, const TripleFn& fn) {
  const Base& base = s1.base();
  for (std::size_t i = 0; i < s1.rank(); ++i)
    for (std::size_t j = 0; j < s2.rank(); ++j)
      for (std::size_t k = 0; k < s3.rank(); ++k) {
        const Section a = Section::basis(s1, i), b = Section::basis(s2, j), c = Section::basis(s3, k);
        fn(i, j, k, a, b, c, "");
        for (std::size_t v = 0; v < base.size(); ++v) {
          const Poly f = Poly::variable(base, v);
          const std::string l = base.name(v);
          fn(i, j, k, f * a, b, c, "f=(" + l + ",1,1)");
          fn(i, j, k, a, f * b, c, "f=(1," + l + ",1)");
          fn(i, j, k, a, b, f * c, "f=(1,1," + l + ")");
        }
      }
}

std::string first_failure(const CheckReport& r) {
  for (const auto& e : r.entries()) {
    if (e.pass) continue;
    std::string w;
    for (std::size_t i = 0; i < e.witness.size(); ++i) w += (i ? "," : "") + std::to_string(e.witness[i]);
    return e.id + (w.empty() ? "" : " at (" + w + ")");
  }
  return {};
}

std::string verdict(const std::string& name, const CheckReport& r) {
  return name + ": " + (r.passed() ? "pass" : "fail (" + first_failure(r) + ")");
}

void require_dual_frames(const CrossedModule& cm, const CrossedModule& dual) {
  if (!(dual.theta.space() == cm.g.space().dual()) || !(dual.g.space() == cm.theta.space().dual()))
    throw StructureError("crossed modules are not on dual frames");
}

// <<xi, u>> = <xi, phi(u)> for phi : theta -> g.
Poly phi_pairing(const PolyMatrix& phi, const Space& g, const Section& xi, const Section& u) {
  return pair(xi, map_apply(phi, g, u));
}

}  // namespace

CheckReport check_bicrossed(const BicrossedModule& b, const std::string& name) {
  const CrossedModule& cm = b.cm;
  const CrossedModule& d = b.dual_cm;
  require_dual_frames(cm, d);
  const PolyMatrix expect = -cm.phi.transpose();
  if (d.phi.rows() != expect.rows() || d.phi.cols() != expect.cols())
    throw StructureError("dual crossed module map has wrong shape");
  for (std::size_t i = 0; i < expect.rows(); ++i)
    for (std::size_t a = 0; a < expect.cols(); ++a)
      if (!(d.phi(i, a) == expect(i, a)))
        throw StructureError("duality wiring: phi_up != -phi^T at (" + std::to_string(i + 1) + "," +
                             std::to_string(a + 1) + ")");

  CheckReport rep(name.empty() ? "(" + cm.theta.space().name() + " -> " + cm.g.space().name() + ", " +
                                     d.theta.space().name() + " -> " + d.g.space().name() + ")"
                               : name);
  rep.absorb(check_crossed_module(cm), "cm");
  rep.absorb(check_crossed_module(d), "dual");
  rep.absorb(check_bialgebroid({semidirect_unchecked(cm), dual_semidirect(cm, d)}), "bialgebroid");
  return rep;
}

MatchedPair matched_pair_of(const BicrossedModule& b) {
  require_dual_frames(b.cm, b.dual_cm);
  return MatchedPair{b.cm.g, b.dual_cm.g, dual_action(b.cm.action).with_actor(b.cm.g),
                     dual_action(b.dual_cm.action).with_actor(b.dual_cm.g)};
}

CheckReport Equivalence::summary(const std::string& structure) const {
  CheckReport rep(structure);
  const std::string both = verdict(left_name, left) + "; " + verdict(right_name, right);
  rep.add("agreement", left_name + " <=> " + right_name, agree(), both, {}, both);
  return rep;
}

Equivalence theorem_sides(const BicrossedModule& b) {
  return Equivalence{"bicrossed", "matched-pair", check_bicrossed(b), check_matched_pair(matched_pair_of(b))};
}

CheckReport check_theorem_equivalence(const BicrossedModule& b, const std::string& name) {
  return theorem_sides(b).summary(name.empty() ? "bialgebroid crossed module iff matched pair" : name);
}

CheckReport check_lemma_identities(const BicrossedModule& b, const std::string& name) {
  const Algebroid& g = b.cm.g;
  const Algebroid& gs = b.dual_cm.theta;
  require_dual_frames(b.cm, b.dual_cm);
  CheckReport rep(name.empty() ? "identities on " + g.space().name() + " and " + gs.space().name() : name);

  rep.begin("anchor", "rho_g(L_xi x) = 0");
  scaled_basis(gs.space(), [&](std::size_t j, const Poly& f1, const Section& xi) {
    scaled_basis(g.space(), [&](std::size_t i, const Poly& f2, const Section& x) {
      rep.count();
      const Section v = gs.lie_derivative(xi, x);
      for (const auto& c : anchor_vector(g, v))
        if (!c.is_zero()) {
          rep.fail(witness({j, i}), v.to_string(), multiplier_context(f1, f2));
          break;
        }
    });
  });
  rep.finish();

  rep.begin("gstar-bracket",
            "L_x[xi,eta] = [L_x xi,eta] + [xi,L_x eta] - L_{L_xi x} eta + L_{L_eta x} xi - d<L_eta x, xi>");
  scaled_triples(g.space(), gs.space(), gs.space(),
                 [&](std::size_t i, std::size_t j, std::size_t k, const Section& x, const Section& xi,
                     const Section& eta, const std::string& ctx) {
                   rep.count();
                   const Section lxix = gs.lie_derivative(xi, x), letax = gs.lie_derivative(eta, x);
                   GradedElement r = g.lie_derivative(x, gs.bracket(xi, eta)) -
                                     gs.bracket(g.lie_derivative(x, xi), eta) - gs.bracket(xi, g.lie_derivative(x, eta)) +
                                     g.lie_derivative(lxix, eta) - g.lie_derivative(letax, xi) +
                                     g.differential(GradedElement::scalar(gs.space(), pair(letax, xi)));
                   if (!r.is_zero()) rep.fail(witness({i, j, k}), r.to_string(), ctx);
                 });
  rep.finish();

  rep.begin("g-bracket", "L_xi[x,y] = [L_xi x,y] + [x,L_xi y] + L_{L_y xi} x - L_{L_x xi} y");
  scaled_triples(gs.space(), g.space(), g.space(),
                 [&](std::size_t j, std::size_t i, std::size_t k, const Section& xi, const Section& x,
                     const Section& y, const std::string& ctx) {
                   rep.count();
                   GradedElement r = gs.lie_derivative(xi, g.bracket(x, y)) - g.bracket(gs.lie_derivative(xi, x), y) -
                                     g.bracket(x, gs.lie_derivative(xi, y)) -
                                     gs.lie_derivative(g.lie_derivative(y, xi), x) +
                                     gs.lie_derivative(g.lie_derivative(x, xi), y);
                   if (!r.is_zero()) rep.fail(witness({j, i, k}), r.to_string(), ctx);
                 });
  rep.finish();
  return rep;
}

Poly CoquadraticAlgebroid::form(const Section& gamma, const Section& gamma2) const {
  Poly out = Poly::zero(K.base());
  for (const auto& [ka, ca] : gamma.components())
    for (const auto& [kb, cb] : gamma2.components())
      if (!C(ka[0], kb[0]).is_zero()) out += ca * cb * C(ka[0], kb[0]);
  return out;
}

CheckReport check_coquadratic(const CoquadraticAlgebroid& k, const std::string& name) {
  const Algebroid& K = k.K;
  CheckReport rep(name.empty() ? "co-quadratic " + K.space().name() : name);
  if (k.C.rows() != K.rank() || k.C.cols() != K.rank()) throw StructureError("co-quadratic form has wrong shape");
  rep.add("symmetric", "C = C^T", k.C.is_symmetric());

  const Space ks = K.space().dual();
  rep.begin("invariance", "rho(X)<<g, g'>> = <<L_X g, g'>> + <<g, L_X g'>>");
  scaled_triples(K.space(), ks, ks,
                 [&](std::size_t i, std::size_t a, std::size_t b, const Section& x, const Section& g1,
                     const Section& g2, const std::string& ctx) {
                   if (ctx.empty() && b < a) return;
                   rep.count();
                   Poly r = K.anchor_apply(x, k.form(g1, g2)) - k.form(K.lie_derivative(x, g1), g2) -
                            k.form(g1, K.lie_derivative(x, g2));
                   if (!r.is_zero()) rep.fail(witness({i, a, b}), r.to_string(), ctx);
                 });
  rep.finish();
  return rep;
}

CheckReport check_coquadratic_dirac(const CoquadraticAlgebroid& k, const std::vector<std::size_t>& D,
                                    const std::string& name) {
  const Algebroid& K = k.K;
  CheckReport rep(name.empty() ? "Dirac subbundle of " + K.space().name() : name);
  std::vector<bool> in(K.rank(), false);
  for (auto s : D) in.at(s) = true;

  rep.begin("closure", "[x, y] in D for x, y in D");
  for (auto a : D)
    for (auto b : D) {
      rep.count();
      Section out(K.space(), 1);
      for (const auto& [key, v] : K.structure(a, b).components())
        if (!in[key[0]]) out.add_term(key, v);
      if (!out.is_zero()) rep.fail(witness({a, b}), out.to_string());
    }
  rep.finish();

  rep.begin("null-isotropy", "<<g, g'>> = 0 on the annihilator of D");
  for (std::size_t a = 0; a < K.rank(); ++a)
    for (std::size_t b = a; b < K.rank(); ++b) {
      if (in[a] || in[b]) continue;
      rep.count();
      if (!k.C(a, b).is_zero()) rep.fail(witness({a, b}), k.C(a, b).to_string());
    }
  rep.finish();
  return rep;
}

CheckReport check_manin_triple(const ManinTriple& mt, const std::string& name) {
  CheckReport rep(name.empty() ? "Manin triple on " + mt.K.K.space().name() : name);
  std::vector<int> seen(mt.K.K.rank(), 0);
  bool ok = mt.P.size() + mt.Q.size() == mt.K.K.rank();
  for (auto i : mt.P) ok = ok && i < seen.size() && ++seen[i] == 1;
  for (auto i : mt.Q) ok = ok && i < seen.size() && ++seen[i] == 1;
  rep.add("transverse", "K = P + Q", ok);
  rep.absorb(check_coquadratic(mt.K), "K");
  rep.absorb(check_coquadratic_dirac(mt.K, mt.P), "P");
  rep.absorb(check_coquadratic_dirac(mt.K, mt.Q), "Q");
  return rep;
}

ManinTriple permuted(const ManinTriple& mt, const Space& target, const std::vector<std::size_t>& perm) {
  const std::size_t n = mt.K.K.rank();
  ManinTriple out{{mt.K.K.permuted(target, perm), PolyMatrix(mt.K.K.base(), n, n)}, {}, {}, mt.p_space, mt.q_space};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.K.C(perm[i], perm[j]) = mt.K.C(i, j);
  for (auto i : mt.P) out.P.push_back(perm[i]);
  for (auto i : mt.Q) out.Q.push_back(perm[i]);
  return out;
}

BicrossedModule manin3(const ManinTriple& mt) {
  const CheckReport r = check_manin_triple(mt);
  if (!r.passed()) throw ConstructionError("manin3: not a co-quadratic Manin triple (" + first_failure(r) + ")");
  const MatchedPair mp = decompose(mt.K.K, mt.P, mt.Q, mt.p_space, mt.q_space);
  const std::size_t m = mt.P.size(), k = mt.Q.size();
  PolyMatrix phi(mt.K.K.base(), k, m);
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t a = 0; a < m; ++a) phi(b, a) = mt.K.C(mt.P[a], mt.Q[b]);
  const CrossedModule cm = induce_theta_bracket(mt.q_space.dual(), mp.P, phi, dual_action(mp.p_on_q));
  return BicrossedModule{cm, dualize(cm, mp.Q, dual_action(mp.q_on_p))};
}

ManinTriple manin3_reverse(const BicrossedModule& b) {
  const CheckReport r = check_bicrossed(b);
  if (!r.passed()) throw ConstructionError("manin3_reverse: not a bialgebroid crossed module (" + first_failure(r) + ")");
  const Algebroid K = build_double(matched_pair_of(b));
  const std::size_t m = b.cm.g.rank(), k = b.cm.theta.rank();
  PolyMatrix C(K.base(), m + k, m + k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < m; ++i) C(i, m + a) = C(m + a, i) = b.cm.phi(a, i);
  ManinTriple mt{{K, C}, {}, {}, b.cm.g.space(), b.dual_cm.g.space()};
  for (std::size_t i = 0; i < m; ++i) mt.P.push_back(i);
  for (std::size_t a = 0; a < k; ++a) mt.Q.push_back(m + a);
  return mt;
}

Equivalence invariance_sides(const PairingData& d) {
  const Algebroid& g = d.g;
  const Space gs = g.space().dual(), ts = d.theta.dual();
  const ActionTable act = d.action.with_actor(g);
  auto B = [&](const Section& xi, const Section& u) { return phi_pairing(d.phi, g.space(), xi, u); };
  // <alpha v u, x> = rho(x)<alpha, u> - <alpha, x > u>
  auto vee = [&](const Section& alpha, const Section& u) {
    Section out(gs, 1);
    for (std::size_t i = 0; i < g.rank(); ++i) {
      const Section x = g.basis(i);
      out.add_term({static_cast<std::uint8_t>(i)}, g.anchor_apply(x, pair(alpha, u)) - pair(alpha, act.apply(x, u)));
    }
    return out;
  };

  CheckReport left("pairing identities");
  left.begin("t1", "rho(x)<<xi,u>> = <<L_x xi, u>> + <<xi, x > u>>");
  scaled_triples(g.space(), gs, d.theta,
                 [&](std::size_t i, std::size_t j, std::size_t a, const Section& x, const Section& xi,
                     const Section& u, const std::string& ctx) {
                   left.count();
                   Poly r = g.anchor_apply(x, B(xi, u)) - B(g.lie_derivative(x, xi), u) - B(xi, act.apply(x, u));
                   if (!r.is_zero()) left.fail(witness({i, j, a}), r.to_string(), ctx);
                 });
  left.finish();
  left.begin("t3", "<<alpha v v, u>> = -<<alpha v u, v>>");
  scaled_triples(ts, d.theta, d.theta,
                 [&](std::size_t c, std::size_t a, std::size_t b, const Section& alpha, const Section& u,
                     const Section& v, const std::string& ctx) {
                   left.count();
                   Poly r = B(vee(alpha, v), u) + B(vee(alpha, u), v);
                   if (!r.is_zero()) left.fail(witness({c, a, b}), r.to_string(), ctx);
                 });
  left.finish();
  // Standing hypotheses: g an algebroid acting by a representation.
  left.absorb(check_algebroid(g), "g");
  left.absorb(check_representation(act), "representation");

  CheckReport right("crossed module");
  try {
    right = check_crossed_module(induce_theta_bracket(d.theta, g, d.phi, act), "crossed module");
  } catch (const ConstructionError& e) {
    right.add("induce", "theta bracket induced by phi(u) > v", false, e.what());
  }
  return Equivalence{"pairing identities", "crossed module", left, right};
}

CheckReport check_invariance_equivalence(const PairingData& d, const std::string& name) {
  return invariance_sides(d).summary(name.empty() ? "invariance of <<xi, u>> = <xi, phi(u)>" : name);
}

CheckReport check_pairing_conditions(const MatchedPair& mp, const PolyMatrix& Bm, const std::string& name) {
  const Algebroid& P = mp.P;
  const Algebroid& Q = mp.Q;
  if (Bm.rows() != P.rank() || Bm.cols() != Q.rank()) throw StructureError("pairing matrix has wrong shape");
  const Space ps = P.space().dual(), qs = Q.space().dual();
  const ActionTable pq = mp.p_on_q.with_actor(P), qp = mp.q_on_p.with_actor(Q);
  const ActionTable p_on_qs = dual_action(pq), q_on_ps = dual_action(qp);
  CheckReport rep(name.empty() ? "pairing conditions on " + ps.name() + " x " + qs.name() : name);

  auto B = [&](const Section& xi, const Section& u) {
    Poly out = Poly::zero(P.base());
    for (const auto& [ki, ci] : xi.components())
      for (const auto& [kb, cb] : u.components())
        if (!Bm(ki[0], kb[0]).is_zero()) out += ci * cb * Bm(ki[0], kb[0]);
    return out;
  };
  // alpha v u in P*: <alpha v u, x> = <u, x > alpha>
  auto vee_q = [&](const Section& alpha, const Section& u) {
    Section out(ps, 1);
    for (std::size_t i = 0; i < P.rank(); ++i)
      out.add_term({static_cast<std::uint8_t>(i)}, pair(u, pq.apply(P.basis(i), alpha)));
    return out;
  };
  // x v xi in Q*: <x v xi, alpha> = <xi, alpha > x>
  auto vee_p = [&](const Section& x, const Section& xi) {
    Section out(qs, 1);
    for (std::size_t b = 0; b < Q.rank(); ++b)
      out.add_term({static_cast<std::uint8_t>(b)}, pair(xi, qp.apply(Q.basis(b), x)));
    return out;
  };

  rep.begin("c1", "rho_P(x)<<xi,u>> = <<L_x xi, u>> + <<xi, x > u>>");
  scaled_triples(P.space(), ps, qs,
                 [&](std::size_t i, std::size_t j, std::size_t b, const Section& x, const Section& xi,
                     const Section& u, const std::string& ctx) {
                   rep.count();
                   Poly r = P.anchor_apply(x, B(xi, u)) - B(P.lie_derivative(x, xi), u) - B(xi, p_on_qs.apply(x, u));
                   if (!r.is_zero()) rep.fail(witness({i, j, b}), r.to_string(), ctx);
                 });
  rep.finish();

  rep.begin("c2", "rho_Q(alpha)<<xi,u>> = <<alpha > xi, u>> + <<xi, L_alpha u>>");
  scaled_triples(Q.space(), ps, qs,
                 [&](std::size_t a, std::size_t j, std::size_t b, const Section& alpha, const Section& xi,
                     const Section& u, const std::string& ctx) {
                   rep.count();
                   Poly r = Q.anchor_apply(alpha, B(xi, u)) - B(q_on_ps.apply(alpha, xi), u) -
                            B(xi, Q.lie_derivative(alpha, u));
                   if (!r.is_zero()) rep.fail(witness({a, j, b}), r.to_string(), ctx);
                 });
  rep.finish();

  rep.begin("c3", "<<alpha v u, v>> = -<<alpha v v, u>>");
  scaled_triples(Q.space(), qs, qs,
                 [&](std::size_t a, std::size_t b, std::size_t c, const Section& alpha, const Section& u,
                     const Section& v, const std::string& ctx) {
                   rep.count();
                   Poly r = B(vee_q(alpha, u), v) + B(vee_q(alpha, v), u);
                   if (!r.is_zero()) rep.fail(witness({a, b, c}), r.to_string(), ctx);
                 });
  rep.finish();

  rep.begin("c4", "<<xi, x v eta>> = -<<eta, x v xi>>");
  scaled_triples(P.space(), ps, ps,
                 [&](std::size_t i, std::size_t j, std::size_t k, const Section& x, const Section& xi,
                     const Section& eta, const std::string& ctx) {
                   rep.count();
                   Poly r = B(xi, vee_p(x, eta)) + B(eta, vee_p(x, xi));
                   if (!r.is_zero()) rep.fail(witness({i, j, k}), r.to_string(), ctx);
                 });
  rep.finish();
  return rep;
}

CoquadraticAlgebroid coquadratic_from_pairing(const MatchedPair& mp, const PolyMatrix& B) {
  const std::size_t m = mp.P.rank(), k = mp.Q.rank();
  if (B.rows() != m || B.cols() != k) throw StructureError("pairing matrix has wrong shape");
  PolyMatrix C(mp.P.base(), m + k, m + k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t b = 0; b < k; ++b) C(i, m + b) = C(m + b, i) = B(i, b);
  return {build_double(mp), C};
}

Equivalence pairing_sides(const MatchedPair& mp, const PolyMatrix& B) {
  return Equivalence{"pairing conditions", "co-quadratic", check_pairing_conditions(mp, B),
                     check_coquadratic(coquadratic_from_pairing(mp, B))};
}

GradedElement rmatrix_prime(const CrossedModuleRMatrix& rm) {
  const CrossedModule& cm = rm.cm;
  const Space A{direct_sum_frame({cm.g.space(), cm.theta.space()}), Variance::primal};
  const std::size_t m = cm.g.rank();
  GradedElement out(A, 2);
  for (const auto& [key, c] : rm.r.components()) {
    const Section a = embed(cm.theta.basis(key[0]), A, m), b = embed(cm.theta.basis(key[1]), A, m);
    const Section pa = embed(cm.phi_apply(cm.theta.basis(key[0])), A, 0);
    const Section pb = embed(cm.phi_apply(cm.theta.basis(key[1])), A, 0);
    out += c * (wedge(pa, b) + wedge(a, pb) - wedge(pa, pb));
  }
  return out;
}

BicrossedModule build_from_rmatrix(const CrossedModuleRMatrix& rm) {
  const CrossedModule& cm = rm.cm;
  const Algebroid& th = cm.theta;
  if (!(rm.r.space() == th.space()) || rm.r.degree() != 2)
    throw StructureError("r-matrix must be a bivector on " + th.space().name());
  const GradedElement rr = th.schouten(rm.r, rm.r);
  for (std::size_t i = 0; i < cm.g.rank(); ++i) {
    const GradedElement v = cm.action.apply(cm.g.basis(i), rr);
    if (!v.is_zero())
      throw ConstructionError("x > [r,r] != 0 at x = e" + std::to_string(i + 1) + ": " + v.to_string());
  }

  const Algebroid td = exact_dual(th, rm.r);
  const Space gs = cm.g.space().dual(), ts = th.space().dual();
  const PolyMatrix phi_up = -cm.phi.transpose();
  std::vector<GradedElement> xr;
  for (std::size_t i = 0; i < cm.g.rank(); ++i) xr.push_back(cm.action.apply(cm.g.basis(i), rm.r));

  // <alpha > xi, x> = -<alpha ^ phi_up(xi), x > r>
  ActionTable act(td, gs);
  for (std::size_t a = 0; a < ts.rank(); ++a)
    for (std::size_t j = 0; j < gs.rank(); ++j) {
      const GradedElement w = wedge(td.basis(a), map_apply(phi_up, ts, Section::basis(gs, j)));
      Section v(gs, 1);
      for (std::size_t i = 0; i < cm.g.rank(); ++i) v.add_term({static_cast<std::uint8_t>(i)}, -pair_full(xr[i], w));
      act.set(a, j, v);
    }
  return BicrossedModule{cm, dualize(cm, td, act)};
}

CheckReport check_rmatrix_double(const CrossedModuleRMatrix& rm, const BicrossedModule& b, const std::string& name) {
  CheckReport rep(name.empty() ? "r + r' on " + rm.cm.g.space().name() + " + " + rm.cm.theta.space().name() : name);
  const Algebroid A = semidirect_unchecked(rm.cm);
  const std::size_t m = rm.cm.g.rank();
  const GradedElement L = embed(rm.r, A.space(), m) + rmatrix_prime(rm);

  rep.begin("exact-precondition", "[[L, L], X] = 0");
  const GradedElement LL = A.schouten(L, L);
  for (std::size_t i = 0; i < A.rank(); ++i) {
    rep.count();
    const GradedElement r = A.schouten(LL, A.basis(i));
    if (!r.is_zero()) rep.fail(witness({i}), r.to_string());
  }
  rep.finish();

  const Algebroid ex = exact_dual(A, L);
  const Algebroid As = dual_semidirect(b.cm, b.dual_cm);
  rep.begin("exact-table", "[xi, eta]_L = [xi, eta]_{A*}");
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) {
      rep.count();
      const Section r = ex.structure(i, j) - As.structure(i, j);
      if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string());
    }
  rep.finish();
  rep.add("exact-anchor", "rho o L# = rho_*", ex.anchor() == As.anchor());
  return rep;
}

BicrossedModule build_from_invariant_h(const MatchedPair& mp, const PolyMatrix& h) {
  const CoquadraticAlgebroid K = coquadratic_from_pairing(mp, h);
  const CheckReport r = check_coquadratic(K);
  if (!r.passed()) throw ConstructionError("h is not invariant: " + first_failure(r));
  ManinTriple mt{K, {}, {}, mp.P.space(), mp.Q.space()};
  for (std::size_t i = 0; i < mp.P.rank(); ++i) mt.P.push_back(i);
  for (std::size_t b = 0; b < mp.Q.rank(); ++b) mt.Q.push_back(mp.P.rank() + b);
  return manin3(mt);
}

}  // namespace lbcm
