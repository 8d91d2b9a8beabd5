#include "lbcm/crossmod.hpp"

namespace lbcm {

ActionTable::ActionTable(Algebroid actor, Space target)
    : actor_(std::move(actor)),
      target_(std::move(target)),
      table_(actor_.rank(), std::vector<Section>(target_.rank(), Section::zero(target_, 1))) {
  if (!(actor_.base() == target_.base())) throw StructureError("action between bundles over different bases");
}

void ActionTable::set(std::size_t i, std::size_t a, const Section& value) {
  if (!(value.space() == target_) || value.degree() != 1)
    throw StructureError("action entry must be a section of " + target_.name());
  table_.at(i).at(a) = value;
}

GradedElement ActionTable::apply(const Section& x, const GradedElement& p) const {
  if (!(p.space() == target_)) throw StructureError("action target mismatch: expected " + target_.name());
  GradedElement out(target_, p.degree());
  for (const auto& [kI, c] : p.components()) {
    out.add_term(kI, actor_.anchor_apply(x, c));
    for (const auto& [ki, xi] : x.components()) {
      for (std::size_t b = 0; b < kI.size(); ++b) {
        const Section& img = table_[ki[0]][kI[b]];
        for (const auto& [kl, cl] : img.components()) {
          IndexTuple t = kI;
          t[b] = kl[0];
          out.add_term(std::move(t), xi * c * cl);
        }
      }
    }
  }
  return out;
}

ActionTable ActionTable::with_actor(Algebroid actor) const {
  if (!(actor.space() == actor_.space())) throw StructureError("with_actor: space mismatch");
  ActionTable out = *this;
  out.actor_ = std::move(actor);
  return out;
}

ActionTable dual_action(const ActionTable& act) {
  const Space dual = act.target().dual();
  ActionTable out(act.actor(), dual);
  for (std::size_t i = 0; i < act.actor().rank(); ++i) {
    for (std::size_t b = 0; b < dual.rank(); ++b) {
      Section v(dual, 1);
      for (std::size_t a = 0; a < act.target().rank(); ++a) v.add_term({static_cast<std::uint8_t>(a)}, -act.entry(i, a).coeff(b));
      out.set(i, b, v);
    }
  }
  return out;
}

CheckReport check_representation(const ActionTable& act, const std::string& name) {
  CheckReport rep(name.empty() ? act.actor().space().name() + " on " + act.target().name() : name);
  const Algebroid& g = act.actor();
  const Space& t = act.target();

  rep.begin("representation", "[x,y] > u = x > (y > u) - y > (x > u)");
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = i + 1; j < g.rank(); ++j)
      scaled_basis(t, [&](std::size_t a, const Poly& f, const Section& u) {
        rep.count();
        const Section x = g.basis(i), y = g.basis(j);
        Section r = act.apply(g.bracket(x, y), u) - act.apply(x, act.apply(y, u)) + act.apply(y, act.apply(x, u));
        if (!r.is_zero()) rep.fail(witness({i, j, a}), r.to_string(), multiplier_context(Poly::constant(g.base(), 1), f));
      });
  rep.finish();

  rep.begin("anchor-compatibility", "x > (f u) = (rho(x) f) u + f (x > u)");
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t a = 0; a < t.rank(); ++a)
      for (const auto& f : multipliers(g.base())) {
        rep.count();
        const Section x = g.basis(i), u = Section::basis(t, a);
        Section r = act.apply(x, f * u) - g.anchor_apply(x, f) * u - f * act.apply(x, u);
        if (!r.is_zero()) rep.fail(witness({i, a}), r.to_string(), "f=" + multiplier_label(f));
      }
  rep.finish();
  return rep;
}

Section map_apply(const PolyMatrix& m, const Space& target, const Section& u) {
  if (m.rows() != u.space().rank() || m.cols() != target.rank()) throw StructureError("bundle map has wrong shape");
  Section out(target, 1);
  for (const auto& [k, c] : u.components())
    for (std::size_t i = 0; i < target.rank(); ++i)
      if (!m(k[0], i).is_zero()) out.add_term({static_cast<std::uint8_t>(i)}, c * m(k[0], i));
  return out;
}

Section CrossedModule::phi_apply(const Section& u) const {
  return map_apply(phi, g.space(), u);
}

CheckReport check_crossed_module(const CrossedModule& cm, const std::string& name) {
  CheckReport rep(name.empty() ? cm.theta.space().name() + " -> " + cm.g.space().name() : name);
  const Algebroid& th = cm.theta;
  const Algebroid& g = cm.g;
  if (cm.phi.rows() != th.rank() || cm.phi.cols() != g.rank())
    throw StructureError("crossed module map has wrong shape");
  if (!(cm.action.actor().space() == g.space()) || !(cm.action.target() == th.space()))
    throw StructureError("crossed module action must be " + g.space().name() + " acting on " + th.space().name());

  rep.add("theta-anchor", "theta is a Lie algebra bundle (zero anchor)", th.anchor_is_zero(),
          th.anchor_is_zero() ? "" : "nonzero anchor");

  rep.begin("isotropy", "rho_g(phi(u)) = 0");
  for (std::size_t a = 0; a < th.rank(); ++a)
    for (std::size_t k = 0; k < g.base().size(); ++k) {
      rep.count();
      Poly r = g.anchor_apply(cm.phi_apply(th.basis(a)), Poly::variable(g.base(), k));
      if (!r.is_zero()) rep.fail(witness({a}), r.to_string(), "f=" + g.base().name(k));
    }
  rep.finish();

  rep.begin("CM1", "phi(u) > v = [u, v]");
  for (std::size_t a = 0; a < th.rank(); ++a)
    scaled_basis(th.space(), [&](std::size_t b, const Poly& f, const Section& v) {
      rep.count();
      const Section u = th.basis(a);
      Section r = cm.action.apply(cm.phi_apply(u), v) - th.bracket(u, v);
      if (!r.is_zero()) rep.fail(witness({a, b}), r.to_string(), multiplier_context(Poly::constant(g.base(), 1), f));
    });
  rep.finish();

  rep.begin("CM2", "phi(x > u) = [x, phi(u)]");
  scaled_basis(g.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(th.space(), [&](std::size_t a, const Poly& f2, const Section& u) {
      rep.count();
      Section r = cm.phi_apply(cm.action.apply(x, u)) - g.bracket(x, cm.phi_apply(u));
      if (!r.is_zero()) rep.fail(witness({i, a}), r.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("morphism", "phi([u, v]) = [phi(u), phi(v)] (implied by CM1 and CM2)");
  for (std::size_t a = 0; a < th.rank(); ++a)
    for (std::size_t b = a + 1; b < th.rank(); ++b) {
      rep.count();
      const Section u = th.basis(a), v = th.basis(b);
      Section r = cm.phi_apply(th.bracket(u, v)) - g.bracket(cm.phi_apply(u), cm.phi_apply(v));
      if (!r.is_zero()) rep.fail(witness({a, b}), r.to_string());
    }
  rep.finish();

  rep.absorb(check_representation(cm.action), "representation");
  rep.absorb(check_algebroid(th), "theta");
  rep.absorb(check_algebroid(g), "g");
  return rep;
}

CrossedModule induce_theta_bracket(const Space& theta_space, const Algebroid& g, const PolyMatrix& phi,
                                   const ActionTable& action) {
  if (phi.rows() != theta_space.rank() || phi.cols() != g.rank())
    throw StructureError("crossed module map has wrong shape");
  if (!(action.target() == theta_space)) throw StructureError("action target is not " + theta_space.name());
  const ActionTable act = action.with_actor(g);
  auto phi_of = [&](const Section& u) { return map_apply(phi, g.space(), u); };

  scaled_basis(g.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(theta_space, [&](std::size_t a, const Poly& f2, const Section& u) {
      Section r = phi_of(act.apply(x, u)) - g.bracket(x, phi_of(u));
      if (!r.is_zero())
        throw ConstructionError("phi(x > u) = [x, phi(u)] fails at (" + std::to_string(i + 1) + "," +
                                std::to_string(a + 1) + ") " + multiplier_context(f1, f2) + ": residual " + r.to_string());
    });
  });
  for (std::size_t a = 0; a < theta_space.rank(); ++a)
    for (std::size_t b = a; b < theta_space.rank(); ++b) {
      const Section u = Section::basis(theta_space, a), v = Section::basis(theta_space, b);
      Section r = act.apply(phi_of(u), v) + act.apply(phi_of(v), u);
      if (!r.is_zero())
        throw ConstructionError("phi(u) > v = -phi(v) > u fails at (" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) + "): residual " + r.to_string());
    }
  for (std::size_t a = 0; a < theta_space.rank(); ++a)
    for (std::size_t k = 0; k < g.base().size(); ++k)
      if (!g.anchor_apply(phi_of(Section::basis(theta_space, a)), Poly::variable(g.base(), k)).is_zero())
        throw ConstructionError("phi does not take values in the isotropy of " + g.space().name() + " at (" +
                                std::to_string(a + 1) + ")");

  Algebroid theta(theta_space);
  for (std::size_t a = 0; a < theta_space.rank(); ++a)
    for (std::size_t b = 0; b < theta_space.rank(); ++b)
      theta.set_bracket_entry(a, b, act.apply(phi_of(theta.basis(a)), theta.basis(b)));
  return CrossedModule{theta, g, phi, act};
}

Algebroid semidirect_unchecked(const CrossedModule& cm) {
  const Space sum{direct_sum_frame({cm.g.space(), cm.theta.space()}), Variance::primal};
  const std::size_t m = cm.g.rank();
  Algebroid out(sum);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t v = 0; v < cm.g.base().size(); ++v) out.set_anchor(i, v, cm.g.anchor()(i, v));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.set_bracket_entry(i, j, embed(cm.g.structure(i, j), sum, 0));
  for (std::size_t a = 0; a < cm.theta.rank(); ++a)
    for (std::size_t b = 0; b < cm.theta.rank(); ++b)
      out.set_bracket_entry(m + a, m + b, embed(cm.theta.structure(a, b), sum, m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < cm.theta.rank(); ++a) out.set_bracket(i, m + a, embed(cm.action.entry(i, a), sum, m));
  return out;
}

Algebroid semidirect(const CrossedModule& cm) {
  CheckReport r = check_crossed_module(cm);
  if (!r.passed()) throw ConstructionError("semidirect: input is not a crossed module");
  return semidirect_unchecked(cm);
}

CrossedModule dualize(const CrossedModule& cm, const Algebroid& theta_dual, const ActionTable& g_dual_action) {
  const Space gs = cm.g.space().dual();
  if (!(theta_dual.space() == cm.theta.space().dual()))
    throw StructureError("dualize: theta* algebroid must live on " + cm.theta.space().dual().name());
  if (!(g_dual_action.target() == gs)) throw StructureError("dualize: action must target " + gs.name());
  const ActionTable act = g_dual_action.with_actor(theta_dual);
  const PolyMatrix phi_up = -cm.phi.transpose();
  Algebroid gstar(gs);
  for (std::size_t i = 0; i < gs.rank(); ++i)
    for (std::size_t j = 0; j < gs.rank(); ++j)
      gstar.set_bracket_entry(i, j, act.apply(map_apply(phi_up, theta_dual.space(), gstar.basis(i)), gstar.basis(j)));
  return CrossedModule{gstar, theta_dual, phi_up, act};
}

CheckReport check_prop51(const CrossedModule& cm, const CrossedModule& dual, const std::string& name) {
  CheckReport rep(name.empty() ? "identities for " + cm.theta.space().name() + " -> " + cm.g.space().name() : name);
  if (!(dual.theta.space() == cm.g.space().dual()) || !(dual.g.space() == cm.theta.space().dual()))
    throw StructureError("check_prop51: crossed modules are not on dual frames");
  const ActionTable on_theta_dual = dual_action(cm.action);
  const Space ts = cm.theta.space().dual();

  rep.begin("dual-equivariance", "phi_up(L_x xi) = x > phi_up(xi)");
  scaled_basis(cm.g.space(), [&](std::size_t i, const Poly& f1, const Section& x) {
    scaled_basis(cm.g.space().dual(), [&](std::size_t j, const Poly& f2, const Section& xi) {
      rep.count();
      Section r = map_apply(dual.phi, ts, cm.g.lie_derivative(x, xi)) -
                  on_theta_dual.apply(x, map_apply(dual.phi, ts, xi));
      if (!r.is_zero()) rep.fail(witness({i, j}), r.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();

  rep.begin("inner-action", "phi(u) > alpha = L_u alpha");
  scaled_basis(cm.theta.space(), [&](std::size_t a, const Poly& f1, const Section& u) {
    scaled_basis(ts, [&](std::size_t b, const Poly& f2, const Section& alpha) {
      rep.count();
      Section r = on_theta_dual.apply(cm.phi_apply(u), alpha) - cm.theta.lie_derivative(u, alpha);
      if (!r.is_zero()) rep.fail(witness({a, b}), r.to_string(), multiplier_context(f1, f2));
    });
  });
  rep.finish();
  return rep;
}

}  // namespace lbcm
