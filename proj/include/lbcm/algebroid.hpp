// Lie algebroids over a polynomial base with full Cartan calculus.
//
// An Algebroid lives on a Space (a frame with a variance). Its sections are
// degree-1 elements of that space; its forms are elements of the dual space.
// The same machinery therefore serves A and A*: the differential of an
// algebroid on A* acts on multivectors of A.
//
// Schouten convention: [X, f] = rho(X) f, [f, X] = -rho(X) f, Leibniz in the
// right slot  [P, Q^R] = [P,Q]^R + (-1)^{(|P|-1)|Q|} Q^[P,R], and graded
// antisymmetry [P,Q] = -(-1)^{(|P|-1)(|Q|-1)} [Q,P]. With this choice the dual
// differential of a Lie bialgebroid is a derivation in the form checked by
// check_bialgebroid.

#pragma once

#include <functional>
#include <vector>

#include "lbcm/exterior.hpp"
#include "lbcm/report.hpp"

namespace lbcm {

class Algebroid {
 public:
  Algebroid() = default;
  /// Zero anchor, abelian bracket.
  explicit Algebroid(Space space);
  /// `anchor` is rank x base-dimension; `table[i][j]` = [e_i, e_j].
  Algebroid(Space space, PolyMatrix anchor, std::vector<std::vector<Section>> table);

  const Space& space() const { return space_; }
  std::size_t rank() const { return space_.rank(); }
  const Base& base() const { return space_.base(); }
  const PolyMatrix& anchor() const { return anchor_; }
  const Section& structure(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::vector<std::vector<Section>>& table() const { return table_; }

  void set_anchor(std::size_t i, std::size_t var, Poly value);
  /// Sets [e_i, e_j] = value and [e_j, e_i] = -value.
  void set_bracket(std::size_t i, std::size_t j, const Section& value);
  /// Sets only [e_i, e_j]; used for corrupted tables in mutation fixtures.
  void set_bracket_entry(std::size_t i, std::size_t j, const Section& value);

  bool anchor_is_zero() const { return anchor_.is_zero(); }

  Section basis(std::size_t i) const { return Section::basis(space_, i); }
  Section zero_section() const { return Section::zero(space_, 1); }

  /// rho(X) f.
  Poly anchor_apply(const Section& x, const Poly& f) const;
  /// [X, Y] extended from the table by the Leibniz rule in both slots.
  Section bracket(const Section& x, const Section& y) const;

  /// Lie algebroid differential on forms (elements of the dual space).
  GradedElement differential(const GradedElement& omega) const;
  /// L_X = iota_X d + d iota_X.
  GradedElement lie_derivative(const Section& x, const GradedElement& omega) const;
  /// Gerstenhaber bracket on multivectors of this algebroid's space.
  GradedElement schouten(const GradedElement& p, const GradedElement& q) const;

  /// Same structure on a frame with its basis renumbered: new index of old
  /// basis element i is perm[i].
  Algebroid permuted(const Space& target, const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Algebroid& a, const Algebroid& b) {
    return a.space_ == b.space_ && a.anchor_ == b.anchor_ && a.table_ == b.table_;
  }

 private:
  void require_section(const Section& x, const char* what) const;
  void require_form(const GradedElement& w, const char* what) const;
  /// omega(X, e_rest...) for a section X and a basis tuple.
  Poly eval_with_section(const GradedElement& omega, const Section& x, const IndexTuple& rest) const;
  GradedElement ad_basis(std::size_t i, const GradedElement& q) const;
  GradedElement ad_function(const Poly& f, const GradedElement& q) const;

  Space space_;
  PolyMatrix anchor_;
  std::vector<std::vector<Section>> table_;
};

// Free-function spellings matching the operation catalogue.
inline Section bracket(const Algebroid& a, const Section& x, const Section& y) { return a.bracket(x, y); }
inline Poly anchor_apply(const Algebroid& a, const Section& x, const Poly& f) { return a.anchor_apply(x, f); }
inline GradedElement differential(const Algebroid& a, const GradedElement& w) { return a.differential(w); }
inline GradedElement lie_derivative(const Algebroid& a, const Section& x, const GradedElement& w) {
  return a.lie_derivative(x, w);
}
inline GradedElement schouten(const Algebroid& a, const GradedElement& p, const GradedElement& q) {
  return a.schouten(p, q);
}

/// Jacobi on basis triples, anchor homomorphism on coordinate functions,
/// antisymmetry of the table.
CheckReport check_algebroid(const Algebroid& a, const std::string& name = {});

/// Function multipliers used by the axiom sweeps: 1 and every coordinate.
std::vector<Poly> multipliers(const Base& base);
/// Label for a multiplier in report contexts ("1", "x1", ...).
std::string multiplier_label(const Poly& f);
/// Report context for a pair of multipliers; empty when both are 1.
std::string multiplier_context(const Poly& f1, const Poly& f2);
/// Calls fn(i, f, f * e_i) for every basis index and every multiplier.
void scaled_basis(const Space& s, const std::function<void(std::size_t, const Poly&, const Section&)>& fn);

/// Direct sum of algebroids with no mixed brackets; used by tests and fixtures.
Algebroid direct_sum(const Algebroid& a, const Algebroid& b);

/// Vector field rho(X) applied to each coordinate: entry k is rho(X) x_k.
std::vector<Poly> anchor_vector(const Algebroid& a, const Section& x);

}  // namespace lbcm
