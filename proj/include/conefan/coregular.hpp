#pragma once

#include "conefan/rational.hpp"
#include "conefan/sampling.hpp"

#include <string>

namespace conefan {

// Character-lattice datum of a symmetric pair: roots of G on a maximal
// torus, the restriction onto the character lattice of the connected fixed
// torus, and the roots of H there. All vectors are integral.
struct SymmetricPairDatum {
  std::string label;
  size_t rank_G = 0;
  size_t rank_H = 0;
  std::vector<QVec> roots_G;  // integral covectors in Z^rank_G, negation closed
  QMat restriction;           // rank_H x rank_G, surjective lattice map
  std::vector<QVec> roots_H;  // integral covectors in Z^rank_H, negation closed
  bool connected_H = true;
  std::optional<long> declared_rk_X;
};

void validate_pair(const SymmetricPairDatum& pair);  // throws on invariant violations

struct RestrictedRoots {
  std::vector<QVec> restricted;  // one entry per G-root, zero entries included
  std::vector<QVec> nonzero;     // multiset of the nonzero restrictions
  bool has_zero_restriction = false;
};
RestrictedRoots restricted_roots(const SymmetricPairDatum& pair);

struct CoregularVerdict {
  bool coregular = false;
  std::string witness;  // offending root/component on failure
};
// Divisor criterion: no G-root restricts to zero, and every torsion
// component of every divisor {α|_{T_H} = 1} lies inside some {β = 1}.
CoregularVerdict is_coregular_symmetric(const SymmetricPairDatum& pair);

struct DivisorComponent {
  QVec primitive;   // primitive direction χ0
  long modulus = 1;  // component count N of the divisor bundle along χ0
  long index = 0;    // which torsion translate
  long ord_G = 0;    // vanishing order of D_G
  long ord_H2 = 0;   // vanishing order of (D_H)^2
};

struct DivisorProfile {
  std::vector<DivisorComponent> components;
  bool regular = false;  // (D_H)^2 / D_G extends to a regular function
  bool nonreduced_direction = false;  // α and 2α restrict onto one direction
  std::string witness;
  long curve_redraws = 0;
};

// Orders along each component, computed by restricting every factor
// (1 - χ(t)) to an exact rational one-parameter curve through the component
// and counting its vanishing order at the base point. Degenerate curves are
// redrawn; an error is raised only if every candidate degenerates.
DivisorProfile discriminant_order_profile(const SymmetricPairDatum& pair, uint64_t seed = 1);

// Unimodular change of basis on both character lattices (relabeling /
// conjugating the involution); verdicts must be invariant under this.
SymmetricPairDatum transform_pair(const SymmetricPairDatum& pair, const QMat& on_G,
                                  const QMat& on_H);

}  // namespace conefan
