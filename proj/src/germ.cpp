#include "conefan/germ.hpp"

#include <algorithm>
#include <sstream>

namespace conefan {

namespace {

std::vector<char> small_trace(const GermFanConfig& cfg, const Face& face) {
  std::vector<char> tr(face.pos.size(), 0);
  for (size_t i = 0; i < face.pos.size(); ++i)
    if (cfg.small[i]) tr[i] = face.pos[i];
  return tr;
}

std::vector<char> bx_key(const GermFanConfig& cfg) {
  std::vector<char> k(cfg.bx_sign.size(), 0);
  for (size_t i = 0; i < cfg.bx_sign.size(); ++i)
    if (cfg.small[i]) k[i] = cfg.bx_sign[i];
  return k;
}

}  // namespace

Subspace iota_fixed_space(const GermFanConfig& cfg) {
  const auto& d = cfg.fan->datum();
  if (!d.iota) throw MathError("config has no involution");
  size_t n = d.dim();
  QMat I = QMat::identity(n);
  std::vector<QVec> cols;
  for (size_t j = 0; j < n; ++j) {
    QVec c(n);
    for (size_t i = 0; i < n; ++i) c[i] = (I.at(i, j) + d.iota->at(i, j)) / 2;
    cols.push_back(c);
  }
  return Subspace::span(n, cols);
}

GermFan enumerate_germ_fan(const GermFanConfig& cfg) {
  const Fan& fan = *cfg.fan;
  const auto& d = fan.datum();
  size_t nr = d.roots.size();
  if (cfg.small.size() != nr || cfg.bx_sign.size() != nr)
    throw MathError("germ config masks have wrong length");
  for (size_t i = 0; i < nr; ++i)
    if (cfg.small[i] && !cfg.small[d.negation_of(i)])
      throw MathError("small system not closed under negation");
  for (const auto& b : cfg.center.basis)
    for (const auto& alpha : d.roots)
      if (dot(alpha, b) != 0) throw MathError("center subspace not killed by all roots");

  const auto& ctx = fan.mode_ctx(cfg.base_mode);
  GermFan gf;
  auto key = bx_key(cfg);
  for (FaceId c : ctx.chambers) {
    auto tr = small_trace(cfg, fan.face(c));
    gf.fiber_sizes[tr] += 1;
    if (tr == key) gf.p_bx.push_back(c);
  }
  if (gf.p_bx.empty()) throw MathError("B_x is not a small chamber: no big chamber traces to it");

  for (FaceId f : ctx.faces) {
    const auto& face = fan.face(f);
    bool above = true;
    for (size_t i = 0; i < nr && above; ++i)
      if (cfg.small[i] && cfg.bx_sign[i] && !face.pos[i]) above = false;
    if (above) gf.f_bx.push_back(f);
  }

  if (cfg.use_iota) {
    const auto& tags = fan.tags();
    for (FaceId f : gf.f_bx)
      if (tags.iota_split[f]) gf.f_bx_iota.push_back(f);
  }

  // do the reflections of the small system preserve the big root set?
  gf.reflections_preserve_roots = true;
  size_t n = d.dim();
  for (size_t i = 0; i < nr && gf.reflections_preserve_roots; ++i) {
    if (!cfg.small[i]) continue;
    QMat s = QMat::identity(n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c2 = 0; c2 < n; ++c2) s.at(r, c2) -= d.coroots[i][r] * d.roots[i][c2];
    try {
      d.root_permutation(s);
    } catch (const MathError&) {
      gf.reflections_preserve_roots = false;
    }
  }
  return gf;
}

SmallSimples small_simples(const GermFanConfig& cfg) {
  const auto& d = cfg.fan->datum();
  // signed positive small roots
  std::map<QVec, size_t> positives;
  for (size_t i = 0; i < d.roots.size(); ++i)
    if (cfg.small[i] && cfg.bx_sign[i]) positives.emplace(d.roots[i], i);
  SmallSimples out;
  for (const auto& [alpha, idx] : positives) {
    bool decomposable = false;
    for (const auto& [beta, j] : positives) {
      QVec gamma = alpha - beta;
      if (positives.count(gamma)) { decomposable = true; break; }
    }
    if (!decomposable) {
      out.roots.push_back(alpha);
      out.coroots.push_back(d.coroots[idx]);
      out.root_index.push_back(idx);
    }
  }
  return out;
}

namespace {

bool in_list(const std::vector<FaceId>& v, FaceId f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

}  // namespace

int gamma_bx_value(const GermFanConfig& cfg, const GermFan& gf, FaceId Q, const QVec& H,
                   const OrthogonalSet& X, GermMode mode) {
  const Fan& fan = *cfg.fan;
  if (mode == GermMode::Plain) {
    if (!in_list(gf.f_bx, Q)) throw MathError("face is not above B_x");
    int total = 0;
    for (FaceId P : gf.f_bx) {
      if (!fan.leq(P, Q)) continue;
      const auto& fr = fan.frame(P, Q, cfg.base_mode);
      QVec arg = H - project_to_face(fan, X, P);
      QVec w = fr.weight_coords(fan.mode_project(P, cfg.base_mode, arg));
      bool inside = true;
      for (const auto& c : w)
        if (c <= 0) { inside = false; break; }
      if (inside) total += (fr.k % 2 == 0) ? 1 : -1;
    }
    return total;
  }
  if (mode == GermMode::Iota) {
    if (!in_list(gf.f_bx_iota, Q)) throw MathError("face is not an iota-split face above B_x");
    int total = 0;
    for (FaceId P : gf.f_bx_iota) {
      if (!fan.leq(P, Q)) continue;
      const auto& fr = fan.frame(P, Q, Mode::Iota);
      QVec arg = H - project_to_face(fan, X, P);
      QVec w = fr.weight_coords(fan.mode_project(P, Mode::Iota, arg));
      bool inside = true;
      for (const auto& c : w)
        if (c <= 0) { inside = false; break; }
      if (inside) total += (fr.k % 2 == 0) ? 1 : -1;
    }
    return total;
  }
  // QIota
  if (!in_list(gf.f_bx, Q)) throw MathError("face is not above B_x");
  Subspace fixed = iota_fixed_space(cfg);
  const Subspace& aq_perp = fan.levi_span(Q);  // A^Q, spanned by Levi coroots
  if (intersect(fixed, aq_perp).dim() != 0)
    throw MathError("iota-fixed space meets A^Q: Q-truncated value undefined");
  Subspace drift = sum(fixed, cfg.center);
  if (intersect(drift, aq_perp).dim() != 0)
    throw MathError("A^Q not transverse to the fixed+center space");
  QVec xq_full = project_to_face(fan, X, Q);
  QVec delta = H - xq_full;
  // decompose delta over A^Q ⊕ drift, if possible
  std::vector<QVec> basis = aq_perp.basis;
  basis.insert(basis.end(), drift.basis.begin(), drift.basis.end());
  if (basis.empty()) return is_zero(delta) ? gamma_bx_value(cfg, gf, Q, zero_vec(delta.size()), X, GermMode::Plain) : 0;
  QMat A = mat_from_cols(basis, fan.datum().dim());
  auto sol = solve(A, delta);
  if (!sol) return 0;
  // consistency: solution must reproduce delta (solve ensures it), and the
  // A^Q component is unique by the transversality above
  QVec yq = zero_vec(fan.datum().dim());
  for (size_t j = 0; j < aq_perp.basis.size(); ++j) yq += (*sol)[j] * aq_perp.basis[j];
  QVec resid = delta - yq;
  {
    QVec check = resid;
    for (size_t j = 0; j < drift.basis.size(); ++j)
      check = check - (*sol)[aq_perp.basis.size() + j] * drift.basis[j];
    if (!is_zero(check)) return 0;
  }
  return gamma_bx_value(cfg, gf, Q, yq, X, GermMode::Plain);
}

FGConvexSet hull_support(const GermFanConfig& cfg, const GermFan& gf, const OrthogonalSet& X,
                         GermMode mode) {
  const Fan& fan = *cfg.fan;
  auto rep = validate_orthogonal_set(fan, X);
  if (!rep.is_orthogonal || !rep.is_positive)
    throw MathError("hull_support requires a positive orthogonal set");
  auto ss = small_simples(cfg);
  size_t n = fan.datum().dim();
  std::vector<QVec> vertices, rays, lin = cfg.center.basis;
  if (mode == GermMode::Plain) {
    for (FaceId P : gf.p_bx) vertices.push_back(X.points.at(P));
    for (const auto& c : ss.coroots) rays.push_back(Rat(-1) * c);
  } else if (mode == GermMode::Iota) {
    const auto& tags = fan.tags();
    const auto& proj = fan.mode_ctx(Mode::Iota).projector;
    for (FaceId P : gf.p_bx)
      if (tags.iota_split[P]) vertices.push_back(proj.apply(X.points.at(P)));
    if (vertices.empty()) throw MathError("no iota-split chamber above B_x");
    for (const auto& c : ss.coroots) {
      QVec pc = proj.apply(Rat(-1) * c);
      if (!is_zero(pc)) rays.push_back(pc);
    }
    Subspace fixed = iota_fixed_space(cfg);
    lin.insert(lin.end(), fixed.basis.begin(), fixed.basis.end());
  } else {
    throw MathError("hull_support: plain or iota mode only");
  }
  return build_fg_convex(n, fan.datum().space.inner, vertices, rays, lin);
}

namespace {

// closed cone {H in A_Q : simple roots of Q >= 0}
GenCone closed_chamber_cone(const Fan& fan, const GermFanConfig& cfg, FaceId Q) {
  const auto& d = fan.datum();
  std::vector<QVec> eqs;
  for (size_t i = 0; i < d.roots.size(); ++i)
    if (fan.face(Q).levi[i]) eqs.push_back(d.roots[i]);
  const auto& fr = fan.frame(Q, fan.full_face(), cfg.base_mode);
  return cone_from_constraints(d.dim(), fr.root_reps, eqs);
}

}  // namespace

DescentCoefficients descent_coefficients(const GermFanConfig& cfg, const GermFan& gf,
                                         const QVec& epsilon) {
  const Fan& fan = *cfg.fan;
  const auto& d = fan.datum();
  if (!d.iota || !cfg.use_iota) throw MathError("descent needs an involution");
  size_t n = d.dim();
  Subspace fixed = iota_fixed_space(cfg);
  QMat I = QMat::identity(n);
  QMat fix_proj(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) fix_proj.at(i, j) = (I.at(i, j) + d.iota->at(i, j)) / 2;

  if (!(fix_proj.apply(epsilon) == epsilon))
    throw MathError("epsilon must lie in the iota-fixed subspace");
  // epsilon in the projected closed positive chamber of B_x
  auto ss = small_simples(cfg);
  GenCone bx_cone = cone_from_constraints(n, ss.roots, {});
  if (!cone_projects_to(bx_cone, fix_proj, epsilon))
    throw MathError("epsilon outside the projected closed positive chamber");

  DescentCoefficients out;
  out.epsilon = epsilon;
  size_t full_dim = fixed.dim();
  std::ostringstream report;
  for (FaceId Q : gf.f_bx) {
    GenCone cq = closed_chamber_cone(fan, cfg, Q);
    // projected dimension of the open cone = dim of the projected span
    Subspace span = cone_span(cq);
    std::vector<QVec> pgens;
    for (const auto& b : span.basis) pgens.push_back(fix_proj.apply(b));
    size_t pdim = Subspace::span(n, pgens).dim();
    bool member = relint_projects_to(cq, fix_proj, epsilon);
    if (pdim < full_dim) {
      if (member) throw MathError("epsilon is not generic: lies over a deficient cone projection");
      if (cone_projects_to(cq, fix_proj, epsilon))
        throw MathError("epsilon is not generic: lies over a deficient cone closure");
      report << "face " << Q << ": deficient, avoided\n";
      continue;
    }
    if (member) out.compatible.push_back(Q);
  }
  if (out.compatible.empty()) throw MathError("no epsilon-compatible face");
  report << "compatible faces: " << out.compatible.size();
  out.genericity_report = report.str();

  // downward recursion: process by decreasing positive-part size
  std::vector<FaceId> order = out.compatible;
  std::sort(order.begin(), order.end(), [&](FaceId a, FaceId b) {
    size_t sa = 0, sb = 0;
    for (char c : fan.face(a).pos) sa += c;
    for (char c : fan.face(b).pos) sb += c;
    return sa > sb;
  });
  for (FaceId q : order) {
    Rat s = 0;
    for (FaceId r : out.compatible)
      if (r != q && fan.leq(q, r)) s += out.d.count(r) ? out.d[r] : Rat(0);
    out.d[q] = Rat(1) - s;
  }
  // re-verify the defining relation
  for (FaceId q : out.compatible) {
    Rat s = 0;
    for (FaceId r : out.compatible)
      if (fan.leq(q, r)) s += out.d[r];
    if (s != 1) throw MathError("descent recursion failed to satisfy its defining relation");
  }
  return out;
}

GermEvaluator::GermEvaluator(const GermFanConfig& cfg, const GermFan& gf, const OrthogonalSet& X,
                             GermMode mode)
    : cfg_(&cfg), gf_(&gf), X_(&X), mode_(mode) {
  const Fan& fan = *cfg.fan;
  size_t n = fan.datum().dim();
  Mode frame_mode = (mode == GermMode::Iota) ? Mode::Iota : cfg.base_mode;
  faces_ = (mode == GermMode::Iota) ? gf.f_bx_iota : gf.f_bx;
  if (mode == GermMode::QIota) return;  // per-point delegation, no tables

  // projections X_P once per face
  std::map<FaceId, QVec> xp;
  for (FaceId P : faces_) xp[P] = project_to_face(fan, X, P);

  for (FaceId Q : faces_) {
    std::vector<HatRows> terms;
    for (FaceId P : faces_) {
      if (!fan.leq(P, Q)) continue;
      const auto& fr = fan.frame(P, Q, frame_mode);
      const QMat& mp = fan.face_projection_matrix(P, frame_mode);
      HatRows hr;
      hr.sign = (fr.k % 2 == 0) ? 1 : -1;
      for (size_t j = 0; j < fr.k; ++j) {
        // row_j = (solve_matrix row j) ∘ M_P
        QVec row(n);
        for (size_t c = 0; c < n; ++c) {
          Rat s = 0;
          for (size_t t = 0; t < n; ++t) s += fr.solve_matrix.at(j, t) * mp.at(t, c);
          row[c] = s;
        }
        hr.offset.push_back(dot(row, xp[P]));
        hr.rows.push_back(std::move(row));
      }
      terms.push_back(std::move(hr));
    }
    gamma_terms_[Q] = std::move(terms);

    for (FaceId R : faces_) {
      if (!fan.leq(Q, R)) continue;
      const auto& fr = fan.frame(Q, R, frame_mode);
      const QMat& mq = fan.face_projection_matrix(Q, frame_mode);
      TauRows tr;
      for (const auto& rep : fr.root_reps) {
        QVec row = mq.transposed().apply(rep);
        tr.offset.push_back(dot(row, xp[Q]));
        tr.rows.push_back(std::move(row));
      }
      tau_rows_[{Q, R}] = std::move(tr);
      HatRows hh;
      hh.sign = (fr.k % 2 == 0) ? 1 : -1;
      for (size_t j = 0; j < fr.k; ++j) {
        QVec row(n);
        for (size_t c = 0; c < n; ++c) {
          Rat s = 0;
          for (size_t t = 0; t < n; ++t) s += fr.solve_matrix.at(j, t) * mq.at(t, c);
          row[c] = s;
        }
        hh.offset.push_back(dot(row, xp[Q]));
        hh.rows.push_back(std::move(row));
      }
      hat_rows_qr_[{Q, R}] = std::move(hh);
    }
  }
}

int GermEvaluator::gamma(FaceId Q, const QVec& H) const {
  if (mode_ == GermMode::QIota) return gamma_bx_value(*cfg_, *gf_, Q, H, *X_, mode_);
  auto it = gamma_terms_.find(Q);
  if (it == gamma_terms_.end()) throw MathError("evaluator: face outside the germ family");
  int total = 0;
  for (const auto& hr : it->second) {
    bool inside = true;
    for (size_t j = 0; j < hr.rows.size(); ++j)
      if (dot(hr.rows[j], H) <= hr.offset[j]) { inside = false; break; }
    if (inside) total += hr.sign;
  }
  return total;
}

bool GermEvaluator::tau(FaceId Q, FaceId R, const QVec& H) const {
  const auto& tr = tau_rows_.at({Q, R});
  for (size_t j = 0; j < tr.rows.size(); ++j)
    if (dot(tr.rows[j], H) <= tr.offset[j]) return false;
  return true;
}

bool GermEvaluator::phi(FaceId Q, FaceId R, const QVec& H, const QVec& extra) const {
  const auto& hh = hat_rows_qr_.at({Q, R});
  for (size_t j = 0; j < hh.rows.size(); ++j)
    if (dot(hh.rows[j], H - extra) > hh.offset[j]) return false;
  return true;
}

SplitWitness check_splitting(const GermFanConfig& cfg, const GermFan& gf, const OrthogonalSet& X,
                             const OrthogonalSet& Y, FaceId R, const QVec& H) {
  const Fan& fan = *cfg.fan;
  OrthogonalSet XY = sum_sets(fan, X, Y);
  SplitWitness w;
  w.lhs = gamma_bx_value(cfg, gf, R, H, XY, GermMode::Plain);
  Rat rhs = 0;
  std::ostringstream table;
  for (FaceId Q : gf.f_bx) {
    if (!fan.leq(Q, R)) continue;
    int g1 = gamma_bx_value(cfg, gf, Q, H, X, GermMode::Plain);
    if (g1 == 0) continue;
    QVec xq = project_to_face(fan, X, Q);
    QVec yq = project_to_face(fan, Y, Q);
    int g2 = gamma_QR(fan, Q, R, H - xq, yq, cfg.base_mode);
    rhs += Rat(g1) * Rat(g2);
    table << "Q=" << Q << " gamma_bx=" << g1 << " gamma_QR=" << g2 << "\n";
  }
  w.rhs = rhs;
  w.equal = (Rat(w.lhs) == w.rhs);
  if (!w.equal) w.table = table.str();
  return w;
}

}  // namespace conefan
