#include "conefan/cone_calc.hpp"

namespace conefan {

int cone_indicator(const Fan& fan, const ConeIndicatorQuery& q) {
  if (!fan.leq(q.inner_face, q.outer_face)) throw MathError("cone_indicator: faces not nested");
  if (q.point.size() != fan.datum().dim()) throw MathError("cone_indicator: wrong dimension");
  const auto& fr = fan.frame(q.inner_face, q.outer_face, q.mode);
  QVec y = fan.mode_project(q.inner_face, q.mode, q.point);
  if (q.kind == IndicatorKind::Tau) {
    for (const auto& r : fr.root_reps)
      if (dot(r, y) <= 0) return 0;
    return 1;
  }
  QVec w = fr.weight_coords(y);
  if (q.kind == IndicatorKind::TauHat) {
    for (const auto& c : w)
      if (c <= 0) return 0;
    return 1;
  }
  for (const auto& c : w)
    if (c > 0) return 0;
  return 1;
}

std::vector<FaceId> faces_between(const Fan& fan, FaceId levi_of, FaceId below, Mode mode) {
  std::vector<FaceId> out;
  for (FaceId f : fan.mode_ctx(mode).faces)
    if (fan.levi_leq(levi_of, f) && fan.leq(f, below)) out.push_back(f);
  return out;
}

int gamma_LQ(const Fan& fan, FaceId L, FaceId Q, const QVec& H, const OrthogonalSet& Y) {
  Mode mode = Y.mode;
  int total = 0;
  for (FaceId P : faces_between(fan, L, Q, mode)) {
    const auto& fr = fan.frame(P, Q, mode);
    QVec arg = H - project_to_face(fan, Y, P);
    QVec w = fr.weight_coords(fan.mode_project(P, mode, arg));
    bool inside = true;
    for (const auto& c : w)
      if (c <= 0) { inside = false; break; }
    if (inside) total += (fr.k % 2 == 0) ? 1 : -1;
  }
  return total;
}

Rat hull_volume(const Fan& fan, FaceId L, FaceId Q, const OrthogonalSet& Y) {
  Mode mode = Y.mode;
  auto rep = validate_orthogonal_set(fan, Y);
  if (!rep.is_orthogonal || !rep.is_positive)
    throw MathError("hull_volume requires a positive orthogonal set");
  std::vector<QVec> vertices;
  std::optional<FaceId> sample_face;
  for (FaceId P : fan.mode_ctx(mode).faces) {
    if (!fan.same_levi(P, L) || !fan.leq(P, Q)) continue;
    vertices.push_back(project_to_face(fan, Y, P));
    if (!sample_face) sample_face = P;
  }
  if (!sample_face) throw MathError("hull_volume: no faces with the Levi of L below Q");
  const auto& fr = fan.frame(*sample_face, Q, mode);
  Subspace directions = Subspace::span(fan.datum().dim(), fr.coroots);
  return polytope_volume(vertices, directions, fan.datum().space.lattice);
}

int gamma_QR(const Fan& fan, FaceId Q, FaceId R, const QVec& H, const QVec& X, Mode mode) {
  if (!fan.leq(Q, R)) throw MathError("gamma_QR: faces not nested");
  QVec h = fan.mode_project(Q, mode, H);
  QVec x = fan.mode_project(Q, mode, X);
  int total = 0;
  for (FaceId P : fan.mode_ctx(mode).faces) {
    if (!fan.leq(Q, P) || !fan.leq(P, R)) continue;
    const auto& fr_qp = fan.frame(Q, P, mode);
    bool tau = true;
    for (const auto& r : fr_qp.root_reps)
      if (dot(r, h) <= 0) { tau = false; break; }
    if (!tau) continue;
    const auto& fr_pr = fan.frame(P, R, mode);
    QVec arg = fan.mode_project(P, mode, h - x);
    QVec w = fr_pr.weight_coords(arg);
    bool tau_hat = true;
    for (const auto& c : w)
      if (c <= 0) { tau_hat = false; break; }
    if (tau_hat) total += (fr_pr.k % 2 == 0) ? 1 : -1;
  }
  return total;
}

}  // namespace conefan
