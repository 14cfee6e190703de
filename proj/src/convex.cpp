#include "conefan/convex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace conefan {

namespace {

bool lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

struct DDRay {
  QVec v;
  std::vector<char> active;  // over processed inequalities
};

// Double description on a pure inequality system in R^dim.
void dd_core(size_t dim, const std::vector<QVec>& ineqs, std::vector<QVec>& rays_out,
             std::vector<QVec>& lin_out) {
  std::vector<QVec> L;
  for (size_t i = 0; i < dim; ++i) {
    QVec e(dim, Rat(0));
    e[i] = 1;
    L.push_back(e);
  }
  std::vector<DDRay> R;
  size_t processed = 0;

  for (const QVec& a : ineqs) {
    if (is_zero(a)) continue;
    // lineality reduction
    size_t hit = L.size();
    for (size_t i = 0; i < L.size(); ++i)
      if (dot(a, L[i]) != 0) { hit = i; break; }
    if (hit < L.size()) {
      QVec l0 = L[hit];
      Rat al0 = dot(a, l0);
      if (al0 < 0) { l0 = Rat(-1) * l0; al0 = -al0; }
      std::vector<QVec> L2;
      for (size_t i = 0; i < L.size(); ++i) {
        if (i == hit) continue;
        Rat f = dot(a, L[i]) / al0;
        L2.push_back(L[i] - f * l0);
      }
      for (auto& r : R) {
        Rat f = dot(a, r.v) / al0;
        r.v = r.v - f * l0;
        r.active.push_back(1);  // reduced rays sit on the new hyperplane
      }
      DDRay nr;
      nr.v = l0;
      nr.active.assign(processed, 1);  // lineality was tight on everything so far
      nr.active.push_back(0);
      R.push_back(nr);
      L = L2;
      ++processed;
      continue;
    }
    // split rays
    std::vector<const DDRay*> pos, zero, neg;
    for (const auto& r : R) {
      int s = sgn(dot(a, r.v));
      if (s > 0) pos.push_back(&r);
      else if (s == 0) zero.push_back(&r);
      else neg.push_back(&r);
    }
    std::vector<DDRay> next;
    for (const DDRay* r : pos) {
      DDRay c = *r;
      c.active.push_back(0);
      next.push_back(std::move(c));
    }
    for (const DDRay* r : zero) {
      DDRay c = *r;
      c.active.push_back(1);
      next.push_back(std::move(c));
    }
    for (const DDRay* p : pos) {
      for (const DDRay* n : neg) {
        // combinatorial adjacency test against the pre-split ray list
        std::vector<char> common(processed);
        for (size_t k = 0; k < processed; ++k) common[k] = p->active[k] & n->active[k];
        bool adjacent = true;
        for (const auto& other : R) {
          if (&other == p || &other == n) continue;
          bool superset = true;
          for (size_t k = 0; k < processed && superset; ++k)
            if (common[k] && !other.active[k]) superset = false;
          if (superset) { adjacent = false; break; }
        }
        if (!adjacent) continue;
        Rat ap = dot(a, p->v), an = dot(a, n->v);
        DDRay w;
        w.v = ap * n->v - an * p->v;  // a·w = 0, positive combination
        w.active = common;
        w.active.push_back(1);
        next.push_back(std::move(w));
      }
    }
    R = std::move(next);
    ++processed;
  }
  rays_out.clear();
  for (auto& r : R) rays_out.push_back(r.v);
  lin_out = L;
}

}  // namespace

void dd_solve(size_t dim, const std::vector<QVec>& ineqs, const std::vector<QVec>& eqs,
              std::vector<QVec>& rays_out, std::vector<QVec>& lin_out) {
  // restrict to the solution space of the equations, run DD there, lift back
  Subspace S = kernel_of(dim, eqs);
  size_t k = S.dim();
  rays_out.clear();
  lin_out.clear();
  if (k == 0) return;
  std::vector<QVec> restr;
  restr.reserve(ineqs.size());
  for (const auto& a : ineqs) {
    QVec ra(k);
    for (size_t j = 0; j < k; ++j) ra[j] = dot(a, S.basis[j]);
    restr.push_back(ra);
  }
  std::vector<QVec> rays_k, lin_k;
  dd_core(k, restr, rays_k, lin_k);
  auto lift = [&](const QVec& w) {
    QVec v(dim, Rat(0));
    for (size_t j = 0; j < k; ++j) v += w[j] * S.basis[j];
    return v;
  };
  for (const auto& w : rays_k) rays_out.push_back(lift(w));
  for (const auto& w : lin_k) lin_out.push_back(lift(w));
}

namespace {

// canonical set of rays: reduce modulo lineality (coordinate projection
// along the RREF pivot structure), primitive scale, dedupe, sort
std::vector<QVec> canonical_rays(std::vector<QVec> rays, const Subspace& lin) {
  std::vector<QVec> out;
  for (auto& r : rays) {
    QVec w = r;
    // subtract lineality components using RREF pivots
    for (const auto& b : lin.basis) {
      size_t p = 0;
      while (p < b.size() && b[p] == 0) ++p;
      if (p < b.size() && w[p] != 0) {
        Rat f = w[p];
        for (size_t j = 0; j < w.size(); ++j) w[j] -= f * b[j];
      }
    }
    if (is_zero(w)) continue;
    out.push_back(primitive_scale(w));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

GenCone cone_from_constraints(size_t dim, const std::vector<QVec>& ineqs,
                              const std::vector<QVec>& eqs) {
  GenCone c;
  c.dim = dim;
  std::vector<QVec> rays, lin;
  dd_solve(dim, ineqs, eqs, rays, lin);
  Subspace L = Subspace::span(dim, lin);
  c.lineality = L.basis;
  c.rays = canonical_rays(rays, L);
  // polar of V-rep gives the canonical H-rep
  std::vector<QVec> pineq;
  for (const auto& r : c.rays) pineq.push_back(Rat(-1) * r);
  std::vector<QVec> prays, plin;
  dd_solve(dim, pineq, c.lineality, prays, plin);
  Subspace E = Subspace::span(dim, plin);
  c.eqs = E.basis;
  std::vector<QVec> facets;
  for (const auto& pr : canonical_rays(prays, E)) facets.push_back(Rat(-1) * pr);
  std::sort(facets.begin(), facets.end(), lex_less);
  c.ineqs = facets;
  return c;
}

GenCone cone_from_generators(size_t dim, const std::vector<QVec>& rays,
                             const std::vector<QVec>& lineality) {
  // polar first: {a : <a,r> <= 0, <a,l> = 0}
  std::vector<QVec> pineq;
  for (const auto& r : rays) pineq.push_back(Rat(-1) * r);
  std::vector<QVec> prays, plin;
  dd_solve(dim, pineq, lineality, prays, plin);
  Subspace E = Subspace::span(dim, plin);
  std::vector<QVec> facets;
  for (const auto& pr : canonical_rays(prays, E)) facets.push_back(Rat(-1) * pr);
  return cone_from_constraints(dim, facets, E.basis);
}

bool cone_contains(const GenCone& c, const QVec& x) {
  for (const auto& e : c.eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& a : c.ineqs)
    if (dot(a, x) < 0) return false;
  return true;
}

bool cone_relint_contains(const GenCone& c, const QVec& x) {
  for (const auto& e : c.eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& a : c.ineqs)
    if (dot(a, x) <= 0) return false;
  return true;
}

bool cone_equal(const GenCone& a, const GenCone& b) {
  return a.dim == b.dim && a.rays == b.rays && a.lineality == b.lineality;
}

GenCone cone_sum(const GenCone& a, const GenCone& b) {
  if (a.dim != b.dim) throw MathError("cone_sum: dimension mismatch");
  std::vector<QVec> rays = a.rays, lin = a.lineality;
  rays.insert(rays.end(), b.rays.begin(), b.rays.end());
  lin.insert(lin.end(), b.lineality.begin(), b.lineality.end());
  return cone_from_generators(a.dim, rays, lin);
}

GenCone cone_dual(const GenCone& c, const QMat& inner) {
  // {y : y^T B x <= 0} = B^{-1} {a : <a,x> <= 0}
  auto Binv = inverse(inner);
  if (!Binv) throw MathError("inner product not invertible");
  std::vector<QVec> pineq;
  for (const auto& r : c.rays) pineq.push_back(Rat(-1) * r);
  std::vector<QVec> prays, plin;
  dd_solve(c.dim, pineq, c.lineality, prays, plin);
  std::vector<QVec> drays, dlin;
  for (const auto& v : prays) drays.push_back(Binv->apply(v));
  for (const auto& v : plin) dlin.push_back(Binv->apply(v));
  return cone_from_generators(c.dim, drays, dlin);
}

Subspace cone_span(const GenCone& c) {
  std::vector<QVec> gens = c.rays;
  gens.insert(gens.end(), c.lineality.begin(), c.lineality.end());
  return Subspace::span(c.dim, gens);
}

namespace {

// Generators of {y in cone : proj(y) = target}, homogenized: (y, t) with
// cone constraints on y and proj(y) = t*target.
void slice_generators(const GenCone& c, const QMat& proj, const QVec& target,
                      std::vector<QVec>& verts, std::vector<QVec>& rays,
                      std::vector<QVec>& lin) {
  size_t n = c.dim;
  std::vector<QVec> ineqs, eqs;
  for (const auto& a : c.ineqs) {
    QVec h(n + 1, Rat(0));
    for (size_t i = 0; i < n; ++i) h[i] = a[i];
    ineqs.push_back(h);
  }
  {
    QVec t(n + 1, Rat(0));
    t[n] = 1;
    ineqs.push_back(t);  // t >= 0
  }
  for (const auto& e : c.eqs) {
    QVec h(n + 1, Rat(0));
    for (size_t i = 0; i < n; ++i) h[i] = e[i];
    eqs.push_back(h);
  }
  for (size_t r = 0; r < proj.rows; ++r) {
    QVec h(n + 1, Rat(0));
    for (size_t i = 0; i < n; ++i) h[i] = proj.at(r, i);
    h[n] = -target[r];
    eqs.push_back(h);
  }
  std::vector<QVec> hrays, hlin;
  dd_solve(n + 1, ineqs, eqs, hrays, hlin);
  verts.clear();
  rays.clear();
  lin.clear();
  auto chop = [&](const QVec& v) { return QVec(v.begin(), v.begin() + n); };
  for (const auto& v : hrays) {
    if (v[n] > 0) {
      QVec w = chop(v);
      Rat f = 1 / v[n];
      verts.push_back(f * w);
    } else {
      rays.push_back(chop(v));
    }
  }
  for (const auto& v : hlin) {
    if (v[n] != 0) {
      // lineality with nonzero level cannot occur under t >= 0
      throw MathError("slice: unexpected lineality level");
    }
    lin.push_back(chop(v));
  }
}

}  // namespace

bool cone_projects_to(const GenCone& c, const QMat& proj, const QVec& target) {
  std::vector<QVec> verts, rays, lin;
  slice_generators(c, proj, target, verts, rays, lin);
  return !verts.empty();
}

bool relint_projects_to(const GenCone& c, const QMat& proj, const QVec& target) {
  std::vector<QVec> verts, rays, lin;
  slice_generators(c, proj, target, verts, rays, lin);
  if (verts.empty()) return false;
  // a strict point exists iff every facet functional can be made positive
  for (const auto& a : c.ineqs) {
    bool can = false;
    for (const auto& v : verts)
      if (dot(a, v) > 0) { can = true; break; }
    for (const auto& r : rays)
      if (!can && dot(a, r) > 0) can = true;
    for (const auto& l : lin)
      if (!can && dot(a, l) != 0) can = true;
    if (!can) return false;
  }
  return true;
}

// ----------------------------------------------------------------------

bool FGConvexSet::contains(const QVec& x) const {
  for (const auto& e : eqs)
    if (dot(e.a, x) + e.c != 0) return false;
  for (const auto& i : ineqs)
    if (dot(i.a, x) + i.c < 0) return false;
  return true;
}

FGConvexSet build_fg_convex(size_t dim, const QMat& inner, const std::vector<QVec>& vertices,
                            const std::vector<QVec>& rays, const std::vector<QVec>& lineality) {
  if (vertices.empty()) throw MathError("fg convex set needs at least one vertex");
  FGConvexSet s;
  s.dim = dim;
  s.inner = inner;
  s.vertices = vertices;
  s.rays = rays;
  s.lineality = lineality;

  // homogenize
  std::vector<QVec> gens, lins;
  for (const auto& v : vertices) {
    QVec h = v;
    h.push_back(1);
    gens.push_back(h);
  }
  for (const auto& r : rays) {
    QVec h = r;
    h.push_back(0);
    gens.push_back(h);
  }
  for (const auto& l : lineality) {
    QVec h = l;
    h.push_back(0);
    lins.push_back(h);
  }
  GenCone homog = cone_from_generators(dim + 1, gens, lins);
  for (const auto& a : homog.ineqs) {
    AffIneq ai;
    ai.a = QVec(a.begin(), a.begin() + dim);
    ai.c = a[dim];
    if (is_zero(ai.a)) continue;  // the implied t >= 0 facet
    s.ineqs.push_back(ai);
  }
  for (const auto& e : homog.eqs) {
    AffIneq ae;
    ae.a = QVec(e.begin(), e.begin() + dim);
    ae.c = e[dim];
    s.eqs.push_back(ae);
  }
  s.asym = cone_from_generators(dim, rays, lineality);
  s.dual = cone_dual(s.asym, inner);
  return s;
}

namespace {

struct FaceVRep {
  std::vector<QVec> vertices, rays, lineality;
  bool empty = true;
};

FaceVRep face_vrep(const FGConvexSet& c, const std::vector<size_t>& tight) {
  size_t n = c.dim;
  std::vector<QVec> ineqs, eqs;
  std::set<size_t> t(tight.begin(), tight.end());
  for (size_t i = 0; i < c.ineqs.size(); ++i) {
    QVec h = c.ineqs[i].a;
    h.push_back(c.ineqs[i].c);
    if (t.count(i)) eqs.push_back(h);
    else ineqs.push_back(h);
  }
  {
    QVec tv(n + 1, Rat(0));
    tv[n] = 1;
    ineqs.push_back(tv);
  }
  for (const auto& e : c.eqs) {
    QVec h = e.a;
    h.push_back(e.c);
    eqs.push_back(h);
  }
  std::vector<QVec> hrays, hlin;
  dd_solve(n + 1, ineqs, eqs, hrays, hlin);
  FaceVRep f;
  auto chop = [&](const QVec& v) { return QVec(v.begin(), v.begin() + n); };
  for (const auto& v : hrays) {
    if (v[n] > 0) {
      Rat fct = 1 / v[n];
      f.vertices.push_back(fct * chop(v));
    } else {
      f.rays.push_back(chop(v));
    }
  }
  for (const auto& v : hlin) f.lineality.push_back(chop(v));
  f.empty = f.vertices.empty();
  return f;
}

std::vector<size_t> tight_closure(const FGConvexSet& c, const FaceVRep& f) {
  std::vector<size_t> cl;
  for (size_t i = 0; i < c.ineqs.size(); ++i) {
    bool all_tight = true;
    for (const auto& v : f.vertices)
      if (dot(c.ineqs[i].a, v) + c.ineqs[i].c != 0) { all_tight = false; break; }
    for (const auto& r : f.rays)
      if (all_tight && dot(c.ineqs[i].a, r) != 0) all_tight = false;
    for (const auto& l : f.lineality)
      if (all_tight && dot(c.ineqs[i].a, l) != 0) all_tight = false;
    if (all_tight) cl.push_back(i);
  }
  return cl;
}

SetFace make_face(const FGConvexSet& c, const FaceVRep& f, std::vector<size_t> closure) {
  SetFace sf;
  sf.tight = std::move(closure);
  sf.vertices = f.vertices;
  sf.rays = f.rays;
  sf.lineality = f.lineality;
  std::vector<QVec> dirs;
  for (size_t i = 1; i < f.vertices.size(); ++i) dirs.push_back(f.vertices[i] - f.vertices[0]);
  dirs.insert(dirs.end(), f.rays.begin(), f.rays.end());
  dirs.insert(dirs.end(), f.lineality.begin(), f.lineality.end());
  sf.tangent_span = Subspace::span(c.dim, dirs);
  auto Binv = inverse(c.inner);
  std::vector<QVec> ngens, nlin;
  for (size_t i : sf.tight) ngens.push_back(Binv->apply(Rat(-1) * c.ineqs[i].a));
  for (const auto& e : c.eqs) nlin.push_back(Binv->apply(e.a));
  sf.normal = cone_from_generators(c.dim, ngens, nlin);
  return sf;
}

}  // namespace

std::vector<SetFace> face_lattice(const FGConvexSet& c) {
  std::map<std::vector<size_t>, FaceVRep> found;
  std::vector<std::vector<size_t>> frontier;

  FaceVRep whole = face_vrep(c, {});
  auto cl0 = tight_closure(c, whole);
  found.emplace(cl0, whole);
  frontier.push_back(cl0);

  while (!frontier.empty()) {
    std::vector<std::vector<size_t>> next;
    for (const auto& key : frontier) {
      std::set<size_t> have(key.begin(), key.end());
      for (size_t i = 0; i < c.ineqs.size(); ++i) {
        if (have.count(i)) continue;
        std::vector<size_t> trial = key;
        trial.push_back(i);
        FaceVRep f = face_vrep(c, trial);
        if (f.empty) continue;
        auto cl = tight_closure(c, f);
        if (!found.count(cl)) {
          found.emplace(cl, f);
          next.push_back(cl);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<SetFace> faces;
  for (const auto& [key, f] : found) faces.push_back(make_face(c, f, key));
  return faces;
}

GenCone normal_cone_at(const FGConvexSet& c, const QVec& h) {
  if (!c.contains(h)) throw MathError("normal_cone_at: point outside the set");
  auto Binv = inverse(c.inner);
  std::vector<QVec> gens, lin;
  for (const auto& i : c.ineqs)
    if (dot(i.a, h) + i.c == 0) gens.push_back(Binv->apply(Rat(-1) * i.a));
  for (const auto& e : c.eqs) lin.push_back(Binv->apply(e.a));
  return cone_from_generators(c.dim, gens, lin);
}

GenCone tangent_cone_at(const FGConvexSet& c, const QVec& h) {
  if (!c.contains(h)) throw MathError("tangent_cone_at: point outside the set");
  std::vector<QVec> ineqs, eqs;
  for (const auto& i : c.ineqs)
    if (dot(i.a, h) + i.c == 0) ineqs.push_back(i.a);
  for (const auto& e : c.eqs) eqs.push_back(e.a);
  return cone_from_constraints(c.dim, ineqs, eqs);
}

namespace {

QMat orth_projector(size_t dim, const QMat& inner, const std::vector<QVec>& basis) {
  if (basis.empty()) return QMat(dim, dim);  // zero map
  QMat U = mat_from_cols(basis, dim);
  QMat G = U.transposed().mul(inner).mul(U);
  auto Ginv = inverse(G);
  if (!Ginv) throw MathError("projector: degenerate basis");
  return U.mul(*Ginv).mul(U.transposed()).mul(inner);
}

}  // namespace

ProjectionDecomposition project_decomposition(const FGConvexSet& c,
                                              const std::vector<SetFace>& faces,
                                              const std::vector<QVec>& b_basis, const QVec& xi) {
  size_t n = c.dim;
  Subspace b = Subspace::span(n, b_basis);
  // b^perp w.r.t. the inner product
  std::vector<QVec> perp_eqs;
  for (const auto& v : b.basis) perp_eqs.push_back(c.inner.apply(v));
  Subspace bperp = kernel_of(n, perp_eqs);

  ProjectionDecomposition out;
  out.p = orth_projector(n, c.inner, b.basis);
  out.p_perp = orth_projector(n, c.inner, bperp.basis);

  if (!bperp.contains(xi)) throw MathError("projection: xi not in b-perp");
  // dim(dual + b) = dim ambient
  Subspace dspan = cone_span(c.dual);
  if (sum(dspan, b).dim() != n) throw MathError("projection: dim(dual cone + b) < ambient dim");
  // xi must be a p_perp-image of the dual cone
  if (!cone_projects_to(c.dual, out.p_perp, xi))
    throw MathError("projection: xi outside the projected dual cone");

  size_t full = bperp.dim();
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& F = faces[fi];
    // projected dimension of the (relatively open) normal cone
    Subspace nspan = cone_span(F.normal);
    std::vector<QVec> proj_gens;
    for (const auto& v : nspan.basis) proj_gens.push_back(out.p_perp.apply(v));
    size_t pdim = Subspace::span(n, proj_gens).dim();
    bool member = relint_projects_to(F.normal, out.p_perp, xi);
    if (pdim < full) {
      if (member) throw MathError("projection: xi is not generic");
      continue;
    }
    if (member) out.selected.push_back(fi);
  }
  if (out.selected.empty()) throw MathError("projection: empty face selection");
  return out;
}

namespace {

// Triangulates conv(pts) for pts spanning Q^k affinely; returns simplices
// as index lists of size k+1. Fans from the lexicographically smallest
// point over the recursively triangulated facets not containing it.
std::vector<std::vector<size_t>> triangulate(const std::vector<QVec>& pts, size_t k) {
  if (k == 0) return {{0}};
  size_t apex = 0;
  for (size_t i = 1; i < pts.size(); ++i)
    if (lex_less(pts[i], pts[apex])) apex = i;

  std::vector<QVec> gens;
  for (const auto& p : pts) {
    QVec h = p;
    h.push_back(1);
    gens.push_back(h);
  }
  GenCone hull = cone_from_generators(k + 1, gens, {});

  std::vector<std::vector<size_t>> simplices;
  for (const auto& fct : hull.ineqs) {
    QVec a(fct.begin(), fct.begin() + k);
    if (is_zero(a)) continue;
    Rat c0 = fct[k];
    if (dot(a, pts[apex]) + c0 == 0) continue;
    std::vector<size_t> fidx;
    for (size_t i = 0; i < pts.size(); ++i)
      if (dot(a, pts[i]) + c0 == 0) fidx.push_back(i);
    if (fidx.empty()) continue;
    std::vector<QVec> dirs;
    for (size_t i = 1; i < fidx.size(); ++i) dirs.push_back(pts[fidx[i]] - pts[fidx[0]]);
    Subspace fdir = Subspace::span(k, dirs);
    if (fdir.dim() != k - 1) continue;
    std::vector<QVec> fcoords;
    for (size_t i : fidx) fcoords.push_back(coords_in(fdir.basis, pts[i] - pts[fidx[0]]));
    for (const auto& sub : triangulate(fcoords, k - 1)) {
      std::vector<size_t> simplex;
      simplex.push_back(apex);
      for (size_t loc : sub) simplex.push_back(fidx[loc]);
      simplices.push_back(simplex);
    }
  }
  return simplices;
}

Rat factorial_rat(size_t k) {
  Rat f = 1;
  for (size_t i = 2; i <= k; ++i) f *= Rat((long)i);
  return f;
}

}  // namespace

Rat polytope_volume(const std::vector<QVec>& points, const Subspace& directions,
                    const QMat& lattice) {
  size_t k = directions.dim();
  if (points.empty()) return Rat(0);
  size_t n = points[0].size();
  if (k == 0) return Rat(1);  // zero-dimensional normalized volume

  // basis of (lattice ∩ directions)
  QMat dirmat = mat_from_rows(directions.basis, n);
  std::vector<QVec> cutters = nullspace(dirmat.transposed());
  QMat M(cutters.size(), lattice.cols);
  for (size_t i = 0; i < cutters.size(); ++i) {
    QVec r = lattice.transposed().apply(cutters[i]);
    for (size_t j = 0; j < lattice.cols; ++j) M.at(i, j) = r[j];
  }
  std::vector<QVec> lat_basis;
  for (const auto& z : integer_kernel(M)) {
    QVec x(lattice.cols);
    for (size_t j = 0; j < lattice.cols; ++j) x[j] = Rat(z[j]);
    lat_basis.push_back(lattice.apply(x));
  }
  if (lat_basis.size() != k) throw MathError("volume: lattice does not span the direction space");

  // coordinates relative to the sublattice basis; unit cells have volume 1
  std::vector<QVec> coords;
  for (const auto& p : points) coords.push_back(coords_in(lat_basis, p - points[0]));
  if (Subspace::span(k, coords).dim() < k) return Rat(0);

  Rat vol = 0;
  Rat kfact = factorial_rat(k);
  for (const auto& simplex : triangulate(coords, k)) {
    QMat D(k, k);
    for (size_t j = 1; j <= k; ++j) {
      QVec d = coords[simplex[j]] - coords[simplex[0]];
      for (size_t i = 0; i < k; ++i) D.at(i, j - 1) = d[i];
    }
    vol += abs(det(D)) / kfact;
  }
  return vol;
}

}  // namespace conefan
