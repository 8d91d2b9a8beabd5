// Matched pairs and their doubles, Lie bialgebroids, Courant algebroids with
// the Dorfman bracket, Dirac structures, and the restricted brackets of the
// double of a pair of crossed modules in duality.

#pragma once

#include "lbcm/crossmod.hpp"

namespace lbcm {

struct MatchedPair {
  Algebroid P;
  Algebroid Q;
  ActionTable p_on_q;  // P acting on Q
  ActionTable q_on_p;  // Q acting on P
};

CheckReport check_matched_pair(const MatchedPair& mp, const std::string& name = {});

/// P + Q with [X + 0, 0 + Y] = -(Y > X) + (X > Y). Throws if mp is invalid.
Algebroid build_double(const MatchedPair& mp);
Algebroid build_double_unchecked(const MatchedPair& mp);

/// Splits L along two complementary index sets into a matched pair whose
/// halves live on the given spaces. Throws ConstructionError if a half is not
/// closed under the bracket.
MatchedPair decompose(const Algebroid& L, const std::vector<std::size_t>& p_idx, const std::vector<std::size_t>& q_idx,
                      const Space& p_space, const Space& q_space);

struct Bialgebroid {
  Algebroid A;
  Algebroid A_star;  // on A.space().dual()
};

/// A* with [xi, eta] = L_{L#xi} eta - iota_{L#eta} d xi and anchor rho o L#,
/// where L#xi = iota_xi L.
Algebroid exact_dual(const Algebroid& a, const GradedElement& lambda);

/// d*[u,v] = [d*u, v] + (-1)^{k-1} [u, d*v] for degrees (1,1) and (1,0).
CheckReport check_bialgebroid(const Bialgebroid& b, const std::string& name = {});

class CourantStructure {
 public:
  CourantStructure() = default;
  /// Throws StructureError if the metric is not symmetric and invertible over
  /// the polynomial ring.
  CourantStructure(Space space, PolyMatrix metric, PolyMatrix anchor, std::vector<std::vector<Section>> dorfman);

  const Space& space() const { return space_; }
  std::size_t rank() const { return space_.rank(); }
  const Base& base() const { return space_.base(); }
  const PolyMatrix& metric() const { return metric_; }
  const PolyMatrix& anchor() const { return anchor_; }
  const Section& structure(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::vector<std::vector<Section>>& table() const { return table_; }
  Section basis(std::size_t i) const { return Section::basis(space_, i); }

  Poly anchor_apply(const Section& x, const Poly& f) const;
  Poly pairing(const Section& x, const Section& y) const;
  /// <D f, x> = rho(x) f.
  Section D(const Poly& f) const;
  Section dorfman(const Section& x, const Section& y) const;

  friend bool operator==(const CourantStructure& a, const CourantStructure& b) {
    return a.space_ == b.space_ && a.metric_ == b.metric_ && a.anchor_ == b.anchor_ && a.table_ == b.table_;
  }

 private:
  Space space_;
  PolyMatrix metric_;
  PolyMatrix inverse_;
  PolyMatrix anchor_;
  std::vector<std::vector<Section>> table_;
};

/// A + A* with <X+a, Y+b> = a(Y) + b(X), anchor rho + rho_* and the Dorfman
/// bracket of the double.
CourantStructure build_courant_double(const Bialgebroid& b);

/// CA:1 - CA:6.
CheckReport check_courant(const CourantStructure& c, const std::string& name = {});

/// Maximal isotropy and closure of the span of the given basis indices.
CheckReport check_dirac(const CourantStructure& c, const std::vector<std::size_t>& sub, const std::string& name = {});

/// Whether ker(rho) is coisotropic, (ker rho)^perp in ker rho, at each of the
/// given points of the base.
bool kernel_coisotropic(const PolyMatrix& anchor, const PolyMatrix& metric,
                        const std::vector<std::vector<Rational>>& points);

// ---- The double of a pair of crossed modules in duality -------------------
//
// cm is theta --phi--> g with g acting on theta; dual is g* --phi_up--> theta*
// with theta* acting on g*. A = g + theta, A* = g* + theta* (in the dual frame
// of A), E = A + A*.

/// A* = A_{theta* > g*} renumbered into the dual frame of A_{g > theta}.
Algebroid dual_semidirect(const CrossedModule& cm, const CrossedModule& dual);

/// x v xi in theta: <x v xi, alpha> = <xi, alpha > x>.
Section vee_g(const CrossedModule& cm, const CrossedModule& dual, const Section& x, const Section& xi);
/// alpha v u in g*: <alpha v u, x> = <u, x > alpha>.
Section vee_theta(const CrossedModule& cm, const CrossedModule& dual, const Section& alpha, const Section& u);

struct VeeTables {
  std::vector<std::vector<Section>> g_gstar;          // [i][j] = g_i v g*_j
  std::vector<std::vector<Section>> thetastar_theta;  // [a][b] = theta*_a v theta_b
};
VeeTables vee_operators(const CrossedModule& cm, const CrossedModule& dual);

/// The closed-form restrictions of the Dorfman bracket on E.
CheckReport check_restricted_brackets(const CrossedModule& cm, const CrossedModule& dual, const std::string& name = {});

}  // namespace lbcm
