// Pairs of crossed modules in duality (bicrossed modules), the matched-pair
// criterion, co-quadratic algebroids and Manin triples, and the r-matrix and
// invariant-tensor constructions.
//
// Frames: cm is theta --phi--> g, dual_cm is g* --phi_up--> theta* with
// phi_up = -phi^T. A = g + theta and A* = g* + theta* in the dual frame of A.

#pragma once

#include "lbcm/doubles.hpp"

namespace lbcm {

struct BicrossedModule {
  CrossedModule cm;
  CrossedModule dual_cm;

  friend bool operator==(const BicrossedModule& a, const BicrossedModule& b) {
    return a.cm == b.cm && a.dual_cm == b.dual_cm;
  }
};

/// (A, A*) is a Lie bialgebroid, with both crossed modules checked first.
/// Throws StructureError when the frames are not dual or phi_up != -phi^T.
CheckReport check_bicrossed(const BicrossedModule& b, const std::string& name = {});

/// (g, theta*) with g acting on theta* and theta* acting on g by the
/// contragredients of the given actions.
MatchedPair matched_pair_of(const BicrossedModule& b);

/// Both sides of the matched-pair criterion, computed independently.
struct Equivalence {
  std::string left_name, right_name;
  CheckReport left, right;
  bool agree() const { return left.passed() == right.passed(); }
  /// One "agreement" entry; its context records both verdicts and the first
  /// failing law on each side.
  CheckReport summary(const std::string& structure) const;
};

Equivalence theorem_sides(const BicrossedModule& b);
CheckReport check_theorem_equivalence(const BicrossedModule& b, const std::string& name = {});

/// rho_g(L_xi x) = 0 and the two bracket identities for L_x on g* and L_xi on g.
CheckReport check_lemma_identities(const BicrossedModule& b, const std::string& name = {});

// ---- Co-quadratic algebroids and Manin triples -----------------------------

struct CoquadraticAlgebroid {
  Algebroid K;
  PolyMatrix C;  // symmetric; <<gamma, gamma'>> = gamma^T C gamma' on K*

  Poly form(const Section& gamma, const Section& gamma2) const;
  friend bool operator==(const CoquadraticAlgebroid& a, const CoquadraticAlgebroid& b) {
    return a.K == b.K && a.C == b.C;
  }
};

/// rho(X)<<g, g'>> = <<L_X g, g'>> + <<g, L_X g'>>.
CheckReport check_coquadratic(const CoquadraticAlgebroid& k, const std::string& name = {});
/// Closure of span{e_s : s in D} and isotropy of its annihilator.
CheckReport check_coquadratic_dirac(const CoquadraticAlgebroid& k, const std::vector<std::size_t>& D,
                                    const std::string& name = {});

struct ManinTriple {
  CoquadraticAlgebroid K;
  std::vector<std::size_t> P;
  std::vector<std::size_t> Q;
  Space p_space;  // frames the halves are read into
  Space q_space;

  friend bool operator==(const ManinTriple& a, const ManinTriple& b) {
    return a.K == b.K && a.P == b.P && a.Q == b.Q && a.p_space == b.p_space && a.q_space == b.q_space;
  }
};

/// Co-quadratic, both halves Dirac, P and Q a partition of the basis.
CheckReport check_manin_triple(const ManinTriple& mt, const std::string& name = {});

/// The same triple on another frame: old basis index i becomes perm[i].
ManinTriple permuted(const ManinTriple& mt, const Space& target, const std::vector<std::size_t>& perm);

/// (Q* --phi--> P, P* --phi_up--> Q) with <xi, phi(u)> = <<xi, u>>. Throws
/// ConstructionError if mt is not a Manin triple.
BicrossedModule manin3(const ManinTriple& mt);
/// K = g |><| theta* with <<xi1 + u1, xi2 + u2>> = <xi1, phi(u2)> + <xi2, phi(u1)>.
/// Throws ConstructionError if b is not bicrossed.
ManinTriple manin3_reverse(const BicrossedModule& b);

// ---- Invariance criteria ---------------------------------------------------

/// g acting on theta with a candidate phi; <<xi, u>> = <xi, phi(u)>.
struct PairingData {
  Algebroid g;
  Space theta;
  ActionTable action;
  PolyMatrix phi;  // rank(theta) x rank(g)
};

/// The two identities on <<.,.>>, with g an algebroid acting by a
/// representation, against the crossed-module axioms of the induced structure.
Equivalence invariance_sides(const PairingData& d);
CheckReport check_invariance_equivalence(const PairingData& d, const std::string& name = {});

/// The four pairing conditions for a matched pair (P, Q) with
/// B[i][b] = <<p*_i, q*_b>>.
CheckReport check_pairing_conditions(const MatchedPair& mp, const PolyMatrix& B, const std::string& name = {});
/// Co-quadratic form on P |><| Q determined by B.
CoquadraticAlgebroid coquadratic_from_pairing(const MatchedPair& mp, const PolyMatrix& B);
/// The four conditions against invariance of the form on P |><| Q.
Equivalence pairing_sides(const MatchedPair& mp, const PolyMatrix& B);

// ---- Constructions ----------------------------------------------------------

struct CrossedModuleRMatrix {
  CrossedModule cm;
  GradedElement r;  // degree 2 on theta
};

/// The g*-theta* crossed module from r; throws ConstructionError naming the
/// first x with x > [r, r] != 0.
BicrossedModule build_from_rmatrix(const CrossedModuleRMatrix& rm);

/// r' = sum phi(a) ^ b + a ^ phi(b) - phi(a) ^ phi(b) for r = sum a ^ b, on A.
GradedElement rmatrix_prime(const CrossedModuleRMatrix& rm);

/// [[L, L], X] = 0 for L = r + r', and the exact structure of L reproducing A*.
CheckReport check_rmatrix_double(const CrossedModuleRMatrix& rm, const BicrossedModule& b,
                                 const std::string& name = {});

/// h in P (x) Q given as a rank(P) x rank(Q) matrix. Invariance is checked as
/// invariance of the induced co-quadratic form on P |><| Q; failure throws
/// ConstructionError naming the witness section.
BicrossedModule build_from_invariant_h(const MatchedPair& mp, const PolyMatrix& h);

}  // namespace lbcm
