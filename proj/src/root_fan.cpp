#include "conefan/root_fan.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace conefan {

AmbientSpace make_ambient(size_t dim, QMat lattice, QMat inner) {
  if (lattice.rows != dim || lattice.cols != dim) throw MathError("lattice must be dim x dim");
  if (inner.rows != dim || inner.cols != dim) throw MathError("inner form must be dim x dim");
  if (det(lattice) == 0) throw MathError("lattice basis is singular");
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j)
      if (inner.at(i, j) != inner.at(j, i)) throw MathError("inner form not symmetric");
  for (size_t k = 1; k <= dim; ++k) {
    QMat minor(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor.at(i, j) = inner.at(i, j);
    if (det(minor) <= 0) throw MathError("inner form not positive definite");
  }
  AmbientSpace s;
  s.dim = dim;
  s.lattice = std::move(lattice);
  s.inner = std::move(inner);
  return s;
}

size_t RootFanDatum::root_index(const QVec& covector) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == covector) return i;
  throw MathError("covector is not a root of the datum");
}

size_t RootFanDatum::negation_of(size_t i) const { return root_index(Rat(-1) * roots[i]); }

std::vector<size_t> RootFanDatum::root_permutation(const QMat& m) const {
  std::vector<size_t> perm(roots.size());
  for (size_t i = 0; i < roots.size(); ++i) {
    QVec pulled = m.apply_t(roots[i]);
    perm[i] = root_index(pulled);  // throws if the set is not preserved
  }
  return perm;
}

namespace {

struct PairedRoot {
  QVec root, coroot;
};

QVec unit_covec(size_t dim, size_t i, const Rat& c) {
  QVec v(dim, Rat(0));
  v[i] = c;
  return v;
}

// Type A via the Cartan-matrix realization on the coroot basis.
std::vector<PairedRoot> build_type_A(size_t n, QMat& gram) {
  QMat cartan(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      cartan.at(i, j) = (i == j) ? 2 : ((i + 1 == j || j + 1 == i) ? -1 : 0);
  gram = cartan;  // simply laced: invariant form = Cartan matrix on coroots

  std::set<std::vector<std::string>> seen;
  auto key = [](const QVec& v) {
    std::vector<std::string> k;
    for (const auto& x : v) k.push_back(rat_str(x));
    return k;
  };
  std::deque<PairedRoot> work;
  std::vector<PairedRoot> out;
  for (size_t j = 0; j < n; ++j) {
    PairedRoot p;
    p.root = cartan.col(j);  // α_j(e_i) = C_{ij}
    p.coroot = unit_covec(n, j, 1);
    work.push_back(p);
  }
  while (!work.empty()) {
    PairedRoot p = work.front();
    work.pop_front();
    if (!seen.insert(key(p.root)).second) continue;
    out.push_back(p);
    for (size_t i = 0; i < n; ++i) {
      PairedRoot s;
      Rat pairing = p.root[i];  // <β, α_i∨>
      s.root = p.root - pairing * cartan.col(i);
      QVec alpha_i = cartan.col(i);
      Rat val = dot(alpha_i, p.coroot);
      s.coroot = p.coroot - val * unit_covec(n, i, 1);
      work.push_back(s);
    }
  }
  return out;
}

std::vector<PairedRoot> build_coordinate_type(const std::string& fam, size_t n) {
  std::vector<PairedRoot> out;
  auto add = [&](const QVec& r, const QVec& c) { out.push_back({r, c}); };
  auto e = [&](size_t i, const Rat& v) { return unit_covec(n, i, v); };
  bool shorts = (fam == "B" || fam == "BC");
  bool longs = (fam == "C" || fam == "BC");
  bool mixed = true;
  if (fam == "D" && n < 2) throw MathError("type D needs rank >= 2");
  for (size_t i = 0; i < n; ++i) {
    if (shorts) {
      add(e(i, 1), e(i, 2));
      add(e(i, -1), e(i, -2));
    }
    if (longs) {
      add(e(i, 2), e(i, 1));
      add(e(i, -2), e(i, -1));
    }
  }
  if (mixed) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) {
            QVec r = e(i, si) + e(j, sj);
            add(r, r);  // coroot = root under the standard form
          }
  }
  return out;
}

}  // namespace

RootFanDatum build_root_datum(const RootDatumSpec& spec) {
  if (spec.components.empty()) throw MathError("no type components given");
  size_t dim = 0;
  std::vector<size_t> offsets;
  std::vector<std::vector<PairedRoot>> comp_roots;
  std::vector<QMat> comp_gram;
  for (const auto& c : spec.components) {
    if (c.rank < 1) throw MathError("component rank must be >= 1");
    offsets.push_back(dim);
    if (c.family == "A") {
      QMat g;
      comp_roots.push_back(build_type_A(c.rank, g));
      comp_gram.push_back(g);
    } else if (c.family == "B" || c.family == "C" || c.family == "D" || c.family == "BC") {
      comp_roots.push_back(build_coordinate_type(c.family, c.rank));
      comp_gram.push_back(QMat::identity(c.rank));
    } else {
      throw MathError("unsupported type family: " + c.family);
    }
    dim += c.rank;
  }

  RootFanDatum d;
  QMat inner(dim, dim);
  for (size_t ci = 0; ci < spec.components.size(); ++ci) {
    size_t off = offsets[ci], r = spec.components[ci].rank;
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) inner.at(off + i, off + j) = comp_gram[ci].at(i, j);
    for (const auto& pr : comp_roots[ci]) {
      QVec root(dim, Rat(0)), coroot(dim, Rat(0));
      for (size_t i = 0; i < r; ++i) {
        root[off + i] = pr.root[i];
        coroot[off + i] = pr.coroot[i];
      }
      d.roots.push_back(root);
      d.coroots.push_back(coroot);
      d.multiplicity.push_back(1);
    }
  }
  d.space = make_ambient(dim, spec.lattice.value_or(QMat::identity(dim)),
                         spec.inner.value_or(inner));

  auto realize = [&](const AutomorphismSpec& a) -> QMat {
    if (a.kind == "id") return QMat::identity(dim);
    if (a.kind == "neg") {
      QMat m = QMat::identity(dim);
      for (auto& x : m.a) x = -x;
      return m;
    }
    if (a.kind == "matrix") {
      if (!a.matrix) throw MathError("matrix automorphism without matrix");
      return *a.matrix;
    }
    if (a.kind == "swap_components") {
      if (a.component_image.size() != spec.components.size())
        throw MathError("component permutation has wrong length");
      QMat m(dim, dim);
      for (size_t ci = 0; ci < spec.components.size(); ++ci) {
        size_t im = a.component_image[ci];
        if (im >= spec.components.size() ||
            spec.components[im].family != spec.components[ci].family ||
            spec.components[im].rank != spec.components[ci].rank)
          throw MathError("component permutation does not match component types");
        for (size_t i = 0; i < spec.components[ci].rank; ++i)
          m.at(offsets[im] + i, offsets[ci] + i) = 1;
      }
      return m;
    }
    throw MathError("unknown automorphism kind: " + a.kind);
  };

  if (spec.theta) {
    QMat t = realize(*spec.theta);
    d.root_permutation(t);  // throws if the root set is not preserved
    QMat power = t;
    size_t order = 1;
    while (!(power == QMat::identity(dim))) {
      power = power.mul(t);
      if (++order > 24) throw MathError("theta is not of small finite order");
    }
    d.theta = t;
  }
  if (spec.iota) {
    QMat t = realize(*spec.iota);
    d.root_permutation(t);
    if (!(t.mul(t) == QMat::identity(dim))) throw MathError("iota is not an involution");
    d.iota = t;
  }
  if (d.theta && d.iota) {
    if (!(d.theta->mul(*d.iota) == d.iota->mul(*d.theta)))
      throw MathError("theta and iota do not commute");
  }

  // invariants: negation closure and pairing normalization
  for (size_t i = 0; i < d.roots.size(); ++i) {
    d.negation_of(i);
    if (dot(d.roots[i], d.coroots[i]) != 2) throw MathError("pairing <alpha, alpha_vee> != 2");
  }
  return d;
}

FoldedDatum fold_by_iota(const RootFanDatum& datum) {
  if (!datum.iota) throw MathError("datum carries no involution");
  size_t n = datum.dim();
  QMat anti(n, n);  // (I - iota)/2
  QMat I = QMat::identity(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) anti.at(i, j) = (I.at(i, j) - datum.iota->at(i, j)) / 2;
  std::vector<QVec> cols;
  for (size_t j = 0; j < n; ++j) cols.push_back(anti.col(j));
  Subspace V = Subspace::span(n, cols);
  size_t k = V.dim();
  if (k == 0) throw MathError("involution has no anti-invariant part");

  // restricted roots with multiplicities
  std::map<QVec, int> restricted;
  for (const auto& alpha : datum.roots) {
    QVec r(k);
    for (size_t j = 0; j < k; ++j) r[j] = dot(alpha, V.basis[j]);
    if (is_zero(r)) continue;
    restricted[r] += 1;
  }
  if (restricted.empty()) throw MathError("no root has nonzero anti-invariant restriction");

  // Gram of the form on the folded basis and derived coroots
  QMat gram(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      gram.at(i, j) = dot(V.basis[i], datum.space.inner.apply(V.basis[j]));
  auto gram_inv = inverse(gram);
  if (!gram_inv) throw MathError("degenerate folded form");

  RootFanDatum f;
  for (const auto& [r, mult] : restricted) {
    QVec dualv = gram_inv->apply(r);
    Rat norm2 = dot(r, dualv);
    QVec coroot = (Rat(2) / norm2) * dualv;
    f.roots.push_back(r);
    f.coroots.push_back(coroot);
    f.multiplicity.push_back(mult);
  }

  // folded lattice: ambient lattice ∩ V, in folded coordinates
  QMat dirmat = mat_from_rows(V.basis, n);
  std::vector<QVec> cutters = nullspace(dirmat.transposed());
  QMat M(cutters.size(), n);
  for (size_t i = 0; i < cutters.size(); ++i) {
    QVec row = datum.space.lattice.transposed().apply(cutters[i]);
    for (size_t j = 0; j < n; ++j) M.at(i, j) = row[j];
  }
  std::vector<QVec> lat_cols;
  for (const auto& z : integer_kernel(M)) {
    QVec x(n);
    for (size_t j = 0; j < n; ++j) x[j] = Rat(z[j]);
    lat_cols.push_back(coords_in(V.basis, datum.space.lattice.apply(x)));
  }
  if (lat_cols.size() != k) throw MathError("lattice does not intersect the anti-invariant part fully");
  f.space = make_ambient(k, mat_from_cols(lat_cols, k), gram);

  FoldedDatum out;
  out.datum = std::move(f);
  out.embedding = mat_from_cols(V.basis, n);
  return out;
}

// ----------------------------------------------------------------------

namespace {

// proportionality classes of roots (reduced hyperplane list)
struct RootClasses {
  std::vector<size_t> class_of;         // root index -> class id
  std::vector<QVec> rep;                // primitive representative covector per class
  std::vector<std::vector<size_t>> members;
};

RootClasses classify_roots(const RootFanDatum& d) {
  RootClasses rc;
  rc.class_of.assign(d.roots.size(), ~size_t(0));
  for (size_t i = 0; i < d.roots.size(); ++i) {
    QVec p = primitive_scale(d.roots[i]);
    QVec np = primitive_scale(Rat(-1) * d.roots[i]);
    size_t cls = ~size_t(0);
    for (size_t c = 0; c < rc.rep.size(); ++c)
      if (rc.rep[c] == p || rc.rep[c] == np) { cls = c; break; }
    if (cls == ~size_t(0)) {
      cls = rc.rep.size();
      rc.rep.push_back(p);
      rc.members.emplace_back();
    }
    rc.class_of[i] = cls;
    rc.members[cls].push_back(i);
  }
  return rc;
}

}  // namespace

Fan::Fan(const RootFanDatum& datum) : datum_(&datum) { enumerate(); }

void Fan::enumerate() {
  const auto& d = *datum_;
  size_t n = d.dim();
  size_t nr = d.roots.size();
  RootClasses rc = classify_roots(d);

  // generic start point
  QVec v0;
  for (long t = 2; t < 500 && v0.empty(); ++t) {
    QVec v(n);
    Rat p = 1;
    for (size_t i = 0; i < n; ++i) {
      v[i] = p;
      p *= t;
    }
    bool generic = true;
    for (const auto& alpha : d.roots)
      if (dot(alpha, v) == 0) { generic = false; break; }
    if (generic) v0 = v;
  }
  if (v0.empty()) throw MathError("could not find a generic point");

  auto sign_mask = [&](const QVec& v) {
    std::vector<char> pos(nr);
    for (size_t i = 0; i < nr; ++i) pos[i] = dot(d.roots[i], v) > 0;
    return pos;
  };

  // chamber BFS across genuine walls
  struct ChamberInfo {
    std::vector<char> pos;
    std::vector<size_t> wall_classes;  // facet classes
  };
  std::map<std::vector<char>, size_t> chamber_ids;
  std::vector<ChamberInfo> chamber_list;
  std::deque<std::vector<char>> work;
  work.push_back(sign_mask(v0));
  chamber_ids.emplace(work.front(), 0);
  chamber_list.push_back({work.front(), {}});

  auto signed_ineqs = [&](const std::vector<char>& pos) {
    std::vector<QVec> ineqs;
    for (size_t c = 0; c < rc.rep.size(); ++c) {
      size_t i0 = rc.members[c][0];
      ineqs.push_back(pos[i0] ? d.roots[i0] : Rat(-1) * d.roots[i0]);
    }
    return ineqs;
  };

  while (!work.empty()) {
    auto pos = work.front();
    work.pop_front();
    size_t id = chamber_ids[pos];
    GenCone cone = cone_from_constraints(n, signed_ineqs(pos), {});
    // facet classes: canonical facet covectors are proportional to class reps
    std::vector<size_t> walls;
    for (const auto& f : cone.ineqs) {
      QVec pf = primitive_scale(f);
      QVec nf = primitive_scale(Rat(-1) * f);
      for (size_t c = 0; c < rc.rep.size(); ++c)
        if (rc.rep[c] == pf || rc.rep[c] == nf) { walls.push_back(c); break; }
    }
    std::sort(walls.begin(), walls.end());
    walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
    chamber_list[id].wall_classes = walls;
    for (size_t c : walls) {
      auto nb = pos;
      for (size_t i : rc.members[c]) nb[i] = !nb[i];
      if (!chamber_ids.count(nb)) {
        chamber_ids.emplace(nb, chamber_list.size());
        chamber_list.push_back({nb, {}});
        work.push_back(nb);
      }
    }
  }

  // faces from chambers and wall subsets
  std::map<std::vector<char>, FaceId> face_ids;
  auto add_face = [&](const std::vector<char>& posmask) {
    if (face_ids.count(posmask)) return;
    Face f;
    f.pos = posmask;
    f.levi.assign(nr, 0);
    for (size_t i = 0; i < nr; ++i)
      f.levi[i] = posmask[i] && posmask[d.negation_of(i)];
    bool chamber = true;
    for (size_t i = 0; i < nr; ++i)
      if (f.levi[i]) { chamber = false; break; }
    f.is_chamber = chamber;
    std::vector<QVec> levi_roots;
    for (size_t i = 0; i < nr; ++i)
      if (f.levi[i]) levi_roots.push_back(d.roots[i]);
    f.center_dim = kernel_of(n, levi_roots).dim();
    face_ids.emplace(posmask, faces_.size());
    faces_.push_back(std::move(f));
  };

  for (const auto& ch : chamber_list) {
    auto ineqs = signed_ineqs(ch.pos);
    size_t w = ch.wall_classes.size();
    for (size_t sub = 0; sub < (size_t(1) << w); ++sub) {
      std::vector<QVec> eqs;
      for (size_t b = 0; b < w; ++b)
        if (sub & (size_t(1) << b)) eqs.push_back(rc.rep[ch.wall_classes[b]]);
      GenCone fc = cone_from_constraints(n, ineqs, eqs);
      QVec relint(n, Rat(0));
      for (const auto& r : fc.rays) relint += r;
      std::vector<char> posmask(nr);
      for (size_t i = 0; i < nr; ++i) posmask[i] = dot(d.roots[i], relint) >= 0;
      add_face(posmask);
    }
  }

  by_mask_ = face_ids;
  for (size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].is_chamber) chambers_.push_back(f);
    bool full = true;
    for (char c : faces_[f].pos)
      if (!c) { full = false; break; }
    if (full) full_face_ = f;
  }
  std::sort(chambers_.begin(), chambers_.end());
}

FaceId Fan::face_by_mask(const std::vector<char>& pos) const {
  auto it = by_mask_.find(pos);
  if (it == by_mask_.end()) throw MathError("no face with the given positive part");
  return it->second;
}

bool Fan::leq(FaceId a, FaceId b) const {
  const auto& A = faces_[a].pos;
  const auto& B = faces_[b].pos;
  for (size_t i = 0; i < A.size(); ++i)
    if (A[i] && !B[i]) return false;
  return true;
}

bool Fan::levi_leq(FaceId a, FaceId b) const {
  const auto& A = faces_[a].levi;
  const auto& B = faces_[b].levi;
  for (size_t i = 0; i < A.size(); ++i)
    if (A[i] && !B[i]) return false;
  return true;
}

bool Fan::same_levi(FaceId a, FaceId b) const { return faces_[a].levi == faces_[b].levi; }

const Subspace& Fan::center(FaceId f) const {
  auto it = center_cache_.find(f);
  if (it != center_cache_.end()) return it->second;
  std::vector<QVec> levi_roots;
  for (size_t i = 0; i < faces_[f].levi.size(); ++i)
    if (faces_[f].levi[i]) levi_roots.push_back(datum_->roots[i]);
  return center_cache_.emplace(f, kernel_of(datum_->dim(), levi_roots)).first->second;
}

const Subspace& Fan::levi_span(FaceId f) const {
  auto it = levi_span_cache_.find(f);
  if (it != levi_span_cache_.end()) return it->second;
  std::vector<QVec> gens;
  for (size_t i = 0; i < faces_[f].levi.size(); ++i)
    if (faces_[f].levi[i]) gens.push_back(datum_->coroots[i]);
  return levi_span_cache_.emplace(f, Subspace::span(datum_->dim(), gens)).first->second;
}

QVec Fan::project_to_center(FaceId f, const QVec& v) const {
  return project_along(v, center(f).basis, levi_span(f).basis);
}

const FaceTags& Fan::tags() const {
  if (tags_) return *tags_;
  FaceTags t;
  size_t nf = faces_.size();
  t.theta_stable.assign(nf, 0);
  t.iota_split.assign(nf, 0);
  t.iota_split_minimal.assign(nf, 0);
  const auto& d = *datum_;
  std::optional<std::vector<size_t>> tperm, iperm;
  if (d.theta) tperm = d.root_permutation(*d.theta);
  if (d.iota) iperm = d.root_permutation(*d.iota);
  for (size_t f = 0; f < nf; ++f) {
    const auto& face = faces_[f];
    if (tperm) {
      bool stable = true;
      for (size_t i = 0; i < face.pos.size() && stable; ++i)
        if (face.pos[(*tperm)[i]] != face.pos[i]) stable = false;
      t.theta_stable[f] = stable;
    }
    if (iperm) {
      bool split = true;
      for (size_t i = 0; i < face.pos.size() && split; ++i) {
        size_t im = (*iperm)[i];
        if (face.levi[i]) {
          if (!face.levi[im]) split = false;
        } else if (face.pos[i]) {
          if (face.pos[im]) split = false;  // must land among the negatives
        }
      }
      t.iota_split[f] = split;
    }
  }
  if (iperm) {
    size_t best = ~size_t(0);
    for (size_t f = 0; f < nf; ++f) {
      if (!t.iota_split[f]) continue;
      size_t lv = 0;
      for (char c : faces_[f].levi) lv += c;
      best = std::min(best, lv);
    }
    for (size_t f = 0; f < nf; ++f) {
      if (!t.iota_split[f]) continue;
      size_t lv = 0;
      for (char c : faces_[f].levi) lv += c;
      t.iota_split_minimal[f] = (lv == best);
    }
  }
  tags_ = std::move(t);
  return *tags_;
}

const Fan::ModeCtx& Fan::mode_ctx(Mode m) const {
  int key = (int)m;
  auto it = mode_cache_.find(key);
  if (it != mode_cache_.end()) return it->second;
  const auto& d = *datum_;
  size_t n = d.dim();
  ModeCtx ctx;
  ctx.mode = m;
  if (m == Mode::Plain) {
    ctx.projector = QMat::identity(n);
    ctx.subspace = Subspace::whole(n);
    for (FaceId f = 0; f < faces_.size(); ++f) ctx.faces.push_back(f);
    ctx.chambers = chambers_;
  } else if (m == Mode::Twisted) {
    if (!d.theta) throw MathError("datum carries no twist");
    // averaging projector onto the fixed space
    QMat acc = QMat::identity(n);
    QMat power = *d.theta;
    size_t order = 1;
    while (!(power == QMat::identity(n))) {
      for (size_t i = 0; i < n * n; ++i) acc.a[i] += power.a[i];
      power = power.mul(*d.theta);
      ++order;
    }
    for (auto& x : acc.a) x /= Rat((long)order);
    ctx.projector = acc;
    const auto& tg = tags();
    for (FaceId f = 0; f < faces_.size(); ++f)
      if (tg.theta_stable[f]) ctx.faces.push_back(f);
    size_t best = ~size_t(0);
    for (FaceId f : ctx.faces) {
      size_t lv = 0;
      for (char c : faces_[f].levi) lv += c;
      best = std::min(best, lv);
    }
    for (FaceId f : ctx.faces) {
      size_t lv = 0;
      for (char c : faces_[f].levi) lv += c;
      if (lv == best) ctx.chambers.push_back(f);
    }
    std::vector<QVec> cols;
    for (size_t j = 0; j < n; ++j) cols.push_back(ctx.projector.col(j));
    ctx.subspace = Subspace::span(n, cols);
  } else {
    if (!d.iota) throw MathError("datum carries no involution");
    QMat proj(n, n);
    QMat I = QMat::identity(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) proj.at(i, j) = (I.at(i, j) - d.iota->at(i, j)) / 2;
    ctx.projector = proj;
    const auto& tg = tags();
    for (FaceId f = 0; f < faces_.size(); ++f)
      if (tg.iota_split[f]) ctx.faces.push_back(f);
    for (FaceId f = 0; f < faces_.size(); ++f)
      if (tg.iota_split_minimal[f]) ctx.chambers.push_back(f);
    std::vector<QVec> cols;
    for (size_t j = 0; j < n; ++j) cols.push_back(proj.col(j));
    ctx.subspace = Subspace::span(n, cols);
  }
  return mode_cache_.emplace(key, std::move(ctx)).first->second;
}

Subspace Fan::mode_center(FaceId f, Mode m) const {
  return intersect(center(f), mode_ctx(m).subspace);
}

QVec Fan::mode_project(FaceId f, Mode m, const QVec& v) const {
  return mode_ctx(m).projector.apply(project_to_center(f, v));
}

const QMat& Fan::face_projection_matrix(FaceId f, Mode m) const {
  auto key = std::make_pair(f, (int)m);
  auto it = face_proj_cache_.find(key);
  if (it != face_proj_cache_.end()) return it->second;
  size_t n = datum_->dim();
  std::vector<QVec> cols = center(f).basis;
  size_t cdim = cols.size();
  const auto& ls = levi_span(f).basis;
  cols.insert(cols.end(), ls.begin(), ls.end());
  if (cols.size() != n) throw MathError("center and Levi span do not decompose the space");
  auto inv = inverse(mat_from_cols(cols, n));
  if (!inv) throw MathError("center and Levi span do not decompose the space");
  // P0 = C * (first cdim rows of inv)
  QMat p0(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat s = 0;
      for (size_t t = 0; t < cdim; ++t) s += center(f).basis[t][i] * inv->at(t, j);
      p0.at(i, j) = s;
    }
  QMat full = mode_ctx(m).projector.mul(p0);
  return face_proj_cache_.emplace(key, std::move(full)).first->second;
}

namespace {

// canonical representative of a covector modulo the row space of `mods`
QVec reduce_mod(const QVec& alpha, const std::vector<QVec>& mods_rref) {
  QVec w = alpha;
  for (const auto& b : mods_rref) {
    size_t p = 0;
    while (p < b.size() && b[p] == 0) ++p;
    if (p < b.size() && w[p] != 0) {
      Rat f = w[p] / b[p];
      for (size_t j = 0; j < w.size(); ++j) w[j] -= f * b[j];
    }
  }
  return w;
}

}  // namespace

const PairFrame& Fan::frame(FaceId p, FaceId q, Mode m) const {
  auto key = std::make_tuple(p, q, (int)m);
  auto it = frame_cache_.find(key);
  if (it != frame_cache_.end()) return it->second;
  if (!leq(p, q)) throw MathError("frame: faces are not nested");
  const auto& d = *datum_;
  size_t n = d.dim();
  const auto& fp = faces_[p];
  const auto& fq = faces_[q];

  // RREF basis of the span of Levi(P) root covectors
  std::vector<QVec> levi_rows;
  for (size_t i = 0; i < fp.levi.size(); ++i)
    if (fp.levi[i]) levi_rows.push_back(d.roots[i]);
  Subspace levi_row_space = Subspace::span(n, levi_rows);

  // restricted classes of positive non-Levi(P) roots inside Levi(Q)
  std::map<QVec, std::vector<size_t>> classes;
  for (size_t i = 0; i < d.roots.size(); ++i) {
    if (!fq.levi[i] || !fp.pos[i] || fp.levi[i]) continue;
    classes[reduce_mod(d.roots[i], levi_row_space.basis)].push_back(i);
  }
  // indecomposables
  std::vector<QVec> class_keys;
  for (const auto& [k2, v2] : classes) class_keys.push_back(k2);
  std::vector<std::pair<QVec, size_t>> simples;  // (class key, representative index)
  for (const auto& k2 : class_keys) {
    bool decomposable = false;
    for (const auto& a : class_keys) {
      QVec b = k2 - a;
      if (classes.count(b)) { decomposable = true; break; }
    }
    if (!decomposable) simples.emplace_back(k2, classes[k2].front());
  }

  PairFrame fr;
  fr.domain = mode_center(p, m);
  Subspace mq = mode_center(q, m);
  const auto& ctx = mode_ctx(m);

  // group plain simples by their functional on the mode center of P
  std::vector<QVec> dom_basis = fr.domain.basis;
  std::map<QVec, std::pair<QVec, QVec>> groups;  // values-on-basis -> (coroot, root rep)
  for (const auto& [cls, rep] : simples) {
    QVec vals(dom_basis.size());
    for (size_t j = 0; j < dom_basis.size(); ++j) vals[j] = dot(d.roots[rep], dom_basis[j]);
    if (is_zero(vals)) continue;  // class dies in this mode
    QVec pc = ctx.projector.apply(project_along(d.coroots[rep], center(p).basis,
                                                levi_span(p).basis));
    auto g = groups.find(vals);
    if (g == groups.end()) {
      groups.emplace(vals, std::make_pair(pc, d.roots[rep]));
    } else if (!(g->second.first == pc)) {
      throw MathError("frame: projected coroots disagree within a restricted class");
    }
  }
  for (const auto& [vals, pr] : groups) {
    fr.coroots.push_back(pr.first);
    fr.root_reps.push_back(pr.second);
  }
  fr.k = fr.coroots.size();
  if (fr.k + mq.dim() != fr.domain.dim())
    throw MathError("frame: projected coroots do not complement the mode center");
  fr.frame_basis = fr.coroots;
  fr.frame_basis.insert(fr.frame_basis.end(), mq.basis.begin(), mq.basis.end());

  // extend to an ambient basis for coordinate solving
  std::vector<QVec> full = fr.frame_basis;
  Subspace sofar = Subspace::span(n, full);
  for (size_t i = 0; i < n && sofar.dim() < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    if (!sofar.contains(e)) {
      full.push_back(e);
      sofar = Subspace::span(n, full);
    }
  }
  auto inv = inverse(mat_from_cols(full, n));
  if (!inv) throw MathError("frame: basis completion failed");
  fr.solve_matrix = *inv;
  return frame_cache_.emplace(key, std::move(fr)).first->second;
}

QVec PairFrame::weight_coords(const QVec& h_projected) const {
  QVec all = solve_matrix.apply(h_projected);
  return QVec(all.begin(), all.begin() + k);
}

std::optional<QVec> Fan::adjacent_coroot(FaceId p, FaceId q, Mode m) const {
  const auto& ctx = mode_ctx(m);
  auto is_chamber_of = [&](FaceId f) {
    return std::find(ctx.chambers.begin(), ctx.chambers.end(), f) != ctx.chambers.end();
  };
  if (!is_chamber_of(p) || !is_chamber_of(q))
    throw MathError("adjacent_coroot expects chambers of the mode");
  if (p == q) return std::nullopt;
  auto sp = chamber_simples(p, m);
  auto sq = chamber_simples(q, m);
  std::vector<QVec> hits;
  for (const auto& c : sp.coroots)
    for (const auto& c2 : sq.coroots)
      if (c == Rat(-1) * c2) hits.push_back(c);
  std::sort(hits.begin(), hits.end(),
            [](const QVec& a, const QVec& b) { return a < b; });
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  if (hits.size() == 1) return hits[0];
  return std::nullopt;
}

Fan::SimpleSystem Fan::chamber_simples(FaceId p, Mode m) const {
  const auto& fr = frame(p, full_face_, m);
  SimpleSystem s;
  s.roots = fr.root_reps;
  s.coroots = fr.coroots;
  return s;
}

OwnedFan make_fan(RootFanDatum datum) {
  OwnedFan o;
  o.datum = std::make_shared<RootFanDatum>(std::move(datum));
  o.fan = std::make_shared<Fan>(*o.datum);
  return o;
}

}  // namespace conefan
