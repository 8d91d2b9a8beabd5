// Lie algebroid crossed modules theta --phi--> g with a g-action on theta.
//
// Actions are stored on basis elements and extended by
//   x > (f u) = (rho(x) f) u + f (x > u),   (f x) > u = f (x > u).
// The actor is a full Algebroid; the target is any Space, so the same table
// type carries g acting on theta, theta* acting on g*, and contragredients.

#pragma once

#include <stdexcept>

#include "lbcm/algebroid.hpp"

namespace lbcm {

/// A construction whose hypotheses fail (invalid input structure).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ActionTable {
 public:
  ActionTable() = default;
  /// Zero action of `actor` on `target`.
  ActionTable(Algebroid actor, Space target);

  const Algebroid& actor() const { return actor_; }
  const Space& target() const { return target_; }
  const Section& entry(std::size_t i, std::size_t a) const { return table_[i][a]; }
  void set(std::size_t i, std::size_t a, const Section& value);

  /// x > P for any element P of the target exterior algebra, extended as a
  /// derivation; for degree 1 this is the action on sections.
  GradedElement apply(const Section& x, const GradedElement& p) const;

  /// The actor re-bound to another algebroid on the same space (same table).
  ActionTable with_actor(Algebroid actor) const;

  friend bool operator==(const ActionTable& a, const ActionTable& b) {
    return a.actor_ == b.actor_ && a.target_ == b.target_ && a.table_ == b.table_;
  }

 private:
  Algebroid actor_;
  Space target_;
  std::vector<std::vector<Section>> table_;
};

/// Contragredient action on the dual target: <x > a, u> = rho(x)<a,u> - <a, x > u>.
ActionTable dual_action(const ActionTable& act);

/// [x,y] > u = x > (y > u) - y > (x > u) and anchor compatibility.
CheckReport check_representation(const ActionTable& act, const std::string& name = {});

struct CrossedModule {
  Algebroid theta;
  Algebroid g;
  PolyMatrix phi;  // rank(theta) x rank(g): phi(t_a) = sum_i phi(a, i) g_i
  ActionTable action;

  Section phi_apply(const Section& u) const;

  friend bool operator==(const CrossedModule& a, const CrossedModule& b) {
    return a.theta == b.theta && a.g == b.g && a.phi == b.phi && a.action == b.action;
  }
};

/// Applies a bundle map given as a (source rank) x (target rank) matrix.
Section map_apply(const PolyMatrix& m, const Space& target, const Section& u);

CheckReport check_crossed_module(const CrossedModule& cm, const std::string& name = {});

/// Builds theta's bracket as [u, v] = phi(u) > v after checking
/// phi(x > u) = [x, phi(u)] and phi(u) > v = -phi(v) > u.
CrossedModule induce_theta_bracket(const Space& theta_space, const Algebroid& g, const PolyMatrix& phi,
                                   const ActionTable& action);

/// A_{g > theta} on the frame g + theta. Throws ConstructionError if cm is invalid.
Algebroid semidirect(const CrossedModule& cm);
/// Same without validating cm; used where the caller reports validity itself.
Algebroid semidirect_unchecked(const CrossedModule& cm);

/// (g* --phi_up--> theta*) with phi_up = -phi^T and the g* bracket
/// [xi, eta] = phi_up(xi) > eta. Not validated.
CrossedModule dualize(const CrossedModule& cm, const Algebroid& theta_dual, const ActionTable& g_dual_action);

/// phi_up(L_x xi) = x > phi_up(xi) and phi(u) > alpha = L_u alpha.
CheckReport check_prop51(const CrossedModule& cm, const CrossedModule& dual, const std::string& name = {});

}  // namespace lbcm
