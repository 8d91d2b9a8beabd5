// Graded exterior algebra over framed free modules with polynomial coefficients.
//
// Every bundle is trivial with a fixed global frame. A Space is a frame
// together with a variance: the primal space V has basis e_i, the dual space
// V* has the dual basis with <e_i, e_j*> = delta_ij. A GradedElement is an
// element of Gamma(wedge^k V) or Gamma(wedge^k V*), stored as a map from
// strictly increasing index tuples to polynomial coefficients.
//
// Forms use the determinant convention: (e1*^e2*)(e1, e2) = 1.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lbcm/ring.hpp"

namespace lbcm {

enum class Variance { primal, dual };

inline Variance flip(Variance v) { return v == Variance::primal ? Variance::dual : Variance::primal; }

struct Frame {
  std::string name;
  std::size_t rank = 0;
  Base base;

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.rank == b.rank && a.name == b.name && a.base == b.base;
  }
};

/// A frame seen with a variance: V (primal) or V* (dual).
struct Space {
  Frame frame;
  Variance variance = Variance::primal;

  std::size_t rank() const { return frame.rank; }
  const Base& base() const { return frame.base; }
  Space dual() const { return {frame, flip(variance)}; }
  /// "g" or "g*".
  std::string name() const { return variance == Variance::primal ? frame.name : frame.name + "*"; }

  friend bool operator==(const Space& a, const Space& b) {
    return a.variance == b.variance && a.frame == b.frame;
  }
};

using IndexTuple = std::vector<std::uint8_t>;

/// Sign of the permutation sorting `idx` ascending; 0 if an index repeats.
/// On return `idx` is sorted.
int sort_with_sign(IndexTuple& idx);

class GradedElement {
 public:
  using ComponentMap = std::map<IndexTuple, Poly>;

  GradedElement() = default;
  GradedElement(Space space, std::size_t degree);

  static GradedElement zero(const Space& space, std::size_t degree) { return {space, degree}; }
  static GradedElement scalar(const Space& space, const Poly& f);
  /// Basis element e_i (0-based) of degree 1.
  static GradedElement basis(const Space& space, std::size_t i);
  /// e_{i1} ^ ... ^ e_{ik}, indices in any order (sign applied).
  static GradedElement basis(const Space& space, IndexTuple indices);

  const Space& space() const { return space_; }
  std::size_t degree() const { return degree_; }
  const ComponentMap& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  /// Component for a strictly increasing tuple (zero if absent).
  Poly component(const IndexTuple& increasing) const;
  /// Degree-1 shorthand.
  Poly coeff(std::size_t i) const;
  /// Value on an arbitrary index tuple: sign of the sort times the component.
  Poly evaluate(IndexTuple indices) const;

  /// Adds c * e_I for an arbitrary (unsorted) tuple.
  void add_term(IndexTuple indices, const Poly& c);

  GradedElement& operator+=(const GradedElement& other);
  GradedElement& operator-=(const GradedElement& other);
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  GradedElement operator-() const;
  friend GradedElement operator*(const Poly& f, const GradedElement& a);
  friend GradedElement operator*(const Rational& q, const GradedElement& a);

  friend bool operator==(const GradedElement& a, const GradedElement& b);
  friend bool operator!=(const GradedElement& a, const GradedElement& b) { return !(a == b); }

  /// e.g. "x1*e1^e2 - e2^e3"; dual elements print their basis as "e1*".
  std::string to_string() const;

 private:
  void require_compatible(const GradedElement& other) const;

  Space space_;
  std::size_t degree_ = 0;
  ComponentMap comps_;
};

/// A degree-1 primal or dual element.
using Section = GradedElement;

GradedElement wedge(const GradedElement& a, const GradedElement& b);

/// iota_x(omega): x of degree 1, omega of the opposite variance with degree >= 1.
GradedElement contract(const GradedElement& x, const GradedElement& omega);

/// <a, b> for degree-1 elements of opposite variance.
Poly pair(const GradedElement& a, const GradedElement& b);

/// Full pairing of a k-vector with a k-form (determinant convention).
Poly pair_full(const GradedElement& a, const GradedElement& b);

/// Re-expresses the coefficients of `x` over `target` (same rank) without
/// changing the numbers; used for canonical identifications of frames.
GradedElement reframe(const GradedElement& x, const Space& target);

/// Embeds a section of a block into a direct-sum space at `offset`.
GradedElement embed(const GradedElement& x, const Space& sum, std::size_t offset);

/// Restricts the components of a degree-1 element to indices
/// [offset, offset + target.rank()), reindexed from zero.
GradedElement restrict_block(const GradedElement& x, const Space& target, std::size_t offset);

/// Applies an index map `perm[i] = new index of old i` into space `target`.
GradedElement permute(const GradedElement& x, const Space& target, const std::vector<std::size_t>& perm);

/// All strictly increasing tuples of length k from {0..n-1}.
std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k);

/// Frame for a direct sum of spaces; its name joins the block identifiers.
Frame direct_sum_frame(const std::vector<Space>& blocks);

/// Identifier-safe name of a space: "g" or "g_star".
std::string space_ident(const Space& s);

}  // namespace lbcm
