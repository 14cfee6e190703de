#pragma once

#include "conefan/root_fan.hpp"

namespace conefan {

// Family of points indexed by the chambers of a mode, all lying in the
// common mode center of those chambers (in ambient coordinates).
struct OrthogonalSet {
  Mode mode = Mode::Plain;
  std::map<FaceId, QVec> points;
};

struct OrthReport {
  bool is_orthogonal = false;
  bool is_positive = false;
  Rat depth, norm;
  std::string witness;
};

OrthReport validate_orthogonal_set(const Fan& fan, const OrthogonalSet& y);

// Projection Y_Q of the family to the mode center of a face Q; checks the
// defining independence of the choice of chamber below Q.
QVec project_to_face(const Fan& fan, const OrthogonalSet& y, FaceId q);

OrthogonalSet sum_sets(const Fan& fan, const OrthogonalSet& a, const OrthogonalSet& b);
OrthogonalSet translate_set(const Fan& fan, const OrthogonalSet& a, const QVec& t);
OrthogonalSet constant_set(const Fan& fan, Mode mode, const QVec& point);
// Y scaled by a rational factor.
OrthogonalSet scale_set(const Fan& fan, const OrthogonalSet& a, const Rat& c);

// Affine chart family over the chambers of a mode, presented by pairwise
// translation offsets: points[to] = points[from] + offset(to, from). All the
// chambers of a mode share one center subspace, so the chart identifications
// are the identity and the cocycle is additive.
struct AffineGluing {
  Mode mode = Mode::Iota;
  FaceId base = 0;
  std::map<std::pair<FaceId, FaceId>, QVec> offsets;  // (to, from)
};

// Cocycle and wall-compatibility; throws with the failing triple/pair.
void validate_gluing(const Fan& fan, const AffineGluing& g);
OrthogonalSet glue_affine_family(const Fan& fan, const AffineGluing& g, const QVec& base_point);
AffineGluing read_offsets(const Fan& fan, const OrthogonalSet& y, FaceId base);

struct LatticeData {
  std::vector<QVec> basis;
  unsigned order_bound = 1;  // character orders divide this
};

}  // namespace conefan
