#pragma once

#include "conefan/rational.hpp"

#include <utility>

namespace conefan {

// Closed convex cone with both descriptions kept in canonical form:
// lineality as an RREF basis, extreme rays primitive and sorted after
// reduction modulo the lineality space, facet covectors likewise (as the
// canonical form of the polar). Canonical forms make equality of cones a
// structural comparison.
struct GenCone {
  size_t dim = 0;
  std::vector<QVec> rays;       // extreme rays, canonical
  std::vector<QVec> lineality;  // RREF basis
  std::vector<QVec> ineqs;      // facets {x : <a,x> >= 0}
  std::vector<QVec> eqs;        // RREF basis of {e : <e,x> = 0 on cone}
};

// Raw double description: V-representation of {x : <a,x> >= 0, <e,x> = 0}.
void dd_solve(size_t dim, const std::vector<QVec>& ineqs, const std::vector<QVec>& eqs,
              std::vector<QVec>& rays_out, std::vector<QVec>& lin_out);

GenCone cone_from_generators(size_t dim, const std::vector<QVec>& rays,
                             const std::vector<QVec>& lineality);
GenCone cone_from_constraints(size_t dim, const std::vector<QVec>& ineqs,
                              const std::vector<QVec>& eqs);

bool cone_contains(const GenCone& c, const QVec& x);
bool cone_relint_contains(const GenCone& c, const QVec& x);
bool cone_equal(const GenCone& a, const GenCone& b);
// Minkowski sum.
GenCone cone_sum(const GenCone& a, const GenCone& b);
// {y : <y, B x> <= 0 for all x in c} (dual w.r.t. the inner product B).
GenCone cone_dual(const GenCone& c, const QMat& inner);
Subspace cone_span(const GenCone& c);

// Is there y in relint(c) with proj(y) = target?
bool relint_projects_to(const GenCone& c, const QMat& proj, const QVec& target);
// Same with relint replaced by the closed cone.
bool cone_projects_to(const GenCone& c, const QMat& proj, const QVec& target);

// ----------------------------------------------------------------------
// Finitely generated convex set Conv(vertices) + Cone(rays) + lineality.

struct AffIneq {
  QVec a;  // <a,x> + c >= 0
  Rat c;
};

struct FGConvexSet {
  size_t dim = 0;
  QMat inner;  // ambient inner product (SPD)
  std::vector<QVec> vertices;
  std::vector<QVec> rays;
  std::vector<QVec> lineality;

  // derived
  std::vector<AffIneq> ineqs;  // irredundant facets
  std::vector<AffIneq> eqs;    // affine hull equations
  GenCone asym;                // asymptotic cone
  GenCone dual;                // dual cone of asym w.r.t. inner

  bool contains(const QVec& x) const;
};

FGConvexSet build_fg_convex(size_t dim, const QMat& inner, const std::vector<QVec>& vertices,
                            const std::vector<QVec>& rays, const std::vector<QVec>& lineality);

struct SetFace {
  std::vector<size_t> tight;  // facet indices active on the face (canonical key)
  std::vector<QVec> vertices;
  std::vector<QVec> rays;
  std::vector<QVec> lineality;
  Subspace tangent_span;  // span(F - x_F)
  GenCone normal;         // N_C(x_F), x_F in the relative interior; a_F^+ = relint(normal)
};

// All faces of the set, the whole set included.
std::vector<SetFace> face_lattice(const FGConvexSet& c);

// N_C(h) for a point h of C; throws if h is outside.
GenCone normal_cone_at(const FGConvexSet& c, const QVec& h);

// Tangent cone at h: closure of R_+ (C - h).
GenCone tangent_cone_at(const FGConvexSet& c, const QVec& h);

struct ProjectionDecomposition {
  QMat p;                    // orthogonal projection onto b
  QMat p_perp;               // orthogonal projection onto the complement
  std::vector<size_t> selected;  // indices into face_lattice(c)
};

// Face subset F(C, xi) of Appendix-style projection decompositions.
// Preconditions (checked): dim(dual + b) = dim, xi in p_perp(dual), and
// genericity: xi avoids projected normal cones of deficient dimension.
ProjectionDecomposition project_decomposition(const FGConvexSet& c,
                                              const std::vector<SetFace>& faces,
                                              const std::vector<QVec>& b_basis, const QVec& xi);

// Exact volume of Conv(points) inside its affine hull, measured against the
// sublattice (lattice ∩ direction space); 0 if dim(hull) < subspace_dim.
// `lattice` columns are a basis of the normalization lattice of the ambient.
Rat polytope_volume(const std::vector<QVec>& points, const Subspace& directions,
                    const QMat& lattice);

}  // namespace conefan
