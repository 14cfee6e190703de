#include "conefan/orthoset.hpp"

#include <sstream>

namespace conefan {

namespace {

std::string face_name(FaceId f) { return "face#" + std::to_string(f); }

}  // namespace

OrthReport validate_orthogonal_set(const Fan& fan, const OrthogonalSet& y) {
  const auto& ctx = fan.mode_ctx(y.mode);
  OrthReport rep;
  rep.is_orthogonal = true;
  rep.is_positive = true;
  bool depth_set = false;
  for (FaceId c : ctx.chambers) {
    auto it = y.points.find(c);
    if (it == y.points.end()) throw MathError("orthogonal set misses chamber " + face_name(c));
    if (it->second.size() != fan.datum().dim())
      throw MathError("orthogonal set point has wrong dimension");
    auto simples = fan.chamber_simples(c, y.mode);
    for (const auto& alpha : simples.roots) {
      Rat v = dot(alpha, it->second);
      if (!depth_set) {
        rep.depth = v;
        rep.norm = abs(v);
        depth_set = true;
      } else {
        rep.depth = std::min(rep.depth, v);
        rep.norm = std::max(rep.norm, abs(v));
      }
    }
  }
  for (size_t i = 0; i < ctx.chambers.size(); ++i) {
    for (size_t j = i + 1; j < ctx.chambers.size(); ++j) {
      FaceId p = ctx.chambers[i], q = ctx.chambers[j];
      auto wall = fan.adjacent_coroot(p, q, y.mode);
      if (!wall) continue;
      QVec diff = y.points.at(p) - y.points.at(q);
      // diff must lie on the coroot line
      QMat m = mat_from_cols({*wall, diff}, fan.datum().dim());
      if (rank(m) > 1) {
        rep.is_orthogonal = false;
        rep.is_positive = false;
        if (rep.witness.empty()) {
          std::ostringstream os;
          os << "difference off the wall coroot line for (" << face_name(p) << ","
             << face_name(q) << ")";
          rep.witness = os.str();
        }
        continue;
      }
      if (!is_zero(diff)) {
        // scalar sign: diff = c * wall
        size_t idx = 0;
        while (idx < wall->size() && (*wall)[idx] == 0) ++idx;
        Rat c = diff[idx] / (*wall)[idx];
        if (c < 0) rep.is_positive = false;
      }
    }
  }
  if (depth_set && rep.depth < 0) rep.is_positive = false;
  if (!rep.is_orthogonal) rep.is_positive = false;
  return rep;
}

QVec project_to_face(const Fan& fan, const OrthogonalSet& y, FaceId q) {
  const auto& ctx = fan.mode_ctx(y.mode);
  std::optional<QVec> value;
  for (FaceId c : ctx.chambers) {
    if (!fan.leq(c, q)) continue;
    QVec proj = fan.mode_project(q, y.mode, y.points.at(c));
    if (!value) {
      value = proj;
    } else if (!(*value == proj)) {
      throw MathError("projection to face depends on the chamber: set is not orthogonal");
    }
  }
  if (!value) throw MathError("no chamber of the mode lies below the face");
  return *value;
}

OrthogonalSet sum_sets(const Fan& fan, const OrthogonalSet& a, const OrthogonalSet& b) {
  if (a.mode != b.mode) throw MathError("summing sets of different modes");
  OrthogonalSet s;
  s.mode = a.mode;
  for (const auto& [f, v] : a.points) s.points[f] = v + b.points.at(f);
  (void)fan;
  return s;
}

OrthogonalSet translate_set(const Fan& fan, const OrthogonalSet& a, const QVec& t) {
  OrthogonalSet s;
  s.mode = a.mode;
  for (const auto& [f, v] : a.points) s.points[f] = v + t;
  (void)fan;
  return s;
}

OrthogonalSet constant_set(const Fan& fan, Mode mode, const QVec& point) {
  OrthogonalSet s;
  s.mode = mode;
  for (FaceId c : fan.mode_ctx(mode).chambers) s.points[c] = point;
  return s;
}

OrthogonalSet scale_set(const Fan& fan, const OrthogonalSet& a, const Rat& c) {
  OrthogonalSet s;
  s.mode = a.mode;
  for (const auto& [f, v] : a.points) s.points[f] = c * v;
  (void)fan;
  return s;
}

void validate_gluing(const Fan& fan, const AffineGluing& g) {
  const auto& ctx = fan.mode_ctx(g.mode);
  const auto& chs = ctx.chambers;
  auto off = [&](FaceId to, FaceId from) -> const QVec& {
    auto it = g.offsets.find({to, from});
    if (it == g.offsets.end())
      throw MathError("gluing misses offset (" + face_name(to) + "," + face_name(from) + ")");
    return it->second;
  };
  for (FaceId p : chs) {
    if (!is_zero(off(p, p))) throw MathError("nonzero self offset at " + face_name(p));
  }
  for (FaceId p : chs)
    for (FaceId q : chs)
      for (FaceId r : chs) {
        QVec lhs = off(r, p);
        QVec rhs = off(r, q) + off(q, p);
        if (!(lhs == rhs)) {
          std::ostringstream os;
          os << "cocycle violation on triple (" << face_name(p) << "," << face_name(q) << ","
             << face_name(r) << ")";
          throw MathError(os.str());
        }
      }
  for (FaceId p : chs)
    for (FaceId q : chs) {
      if (p == q) continue;
      auto wall = fan.adjacent_coroot(p, q, g.mode);
      if (!wall) continue;
      QVec d = off(q, p);
      QMat m = mat_from_cols({*wall, d}, fan.datum().dim());
      if (rank(m) > 1)
        throw MathError("wall offset off the coroot line for (" + face_name(p) + "," +
                        face_name(q) + ")");
    }
}

OrthogonalSet glue_affine_family(const Fan& fan, const AffineGluing& g, const QVec& base_point) {
  validate_gluing(fan, g);
  OrthogonalSet s;
  s.mode = g.mode;
  for (FaceId c : fan.mode_ctx(g.mode).chambers)
    s.points[c] = base_point + g.offsets.at({c, g.base});
  return s;
}

AffineGluing read_offsets(const Fan& fan, const OrthogonalSet& y, FaceId base) {
  AffineGluing g;
  g.mode = y.mode;
  g.base = base;
  const auto& chs = fan.mode_ctx(y.mode).chambers;
  for (FaceId p : chs)
    for (FaceId q : chs) g.offsets[{p, q}] = y.points.at(p) - y.points.at(q);
  return g;
}

}  // namespace conefan
