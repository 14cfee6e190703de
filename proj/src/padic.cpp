#include "conefan/padic.hpp"

#include <algorithm>
#include <sstream>

namespace conefan {

Rat unit_integral(long q, long c0, long m) {
  if (q < 2) throw MathError("residue cardinality must be >= 2");
  if (m >= -c0) return Rat(1);
  if (m == -c0 - 1) return Rat(-1, q - 1);
  return Rat(0);
}

long sigma_of(const PadicWeightScenario& s) {
  long m = 1;
  for (size_t i = 0; i < s.k.size(); ++i)
    if (!(i < s.k_inf.size() && s.k_inf[i])) m = std::max(m, std::labs(s.k[i]));
  return m;
}

namespace {

struct Region {
  std::vector<QVec> vertices;  // of Region ∩ span(lattice)
  bool empty = false;
};

// Support region bounding box data: the hull-support set cut by the
// J-vanishing halfspaces, intersected with the lattice span.
Region support_region(const PadicWeightScenario& s, const OrthogonalSet& X) {
  const Fan& fan = *s.cfg.fan;
  size_t n = fan.datum().dim();
  auto ss = small_simples(s.cfg);
  if (s.k.size() != ss.roots.size()) throw MathError("valuation vector length mismatch");

  // base support set per mode
  FGConvexSet base = [&] {
    if (s.mode == GermMode::QIota) {
      // C^Q_{B_x}(X) ⊕ (fixed + center)
      std::vector<QVec> vertices, rays, lin = s.cfg.center.basis;
      for (FaceId P : s.gf.p_bx)
        if (fan.leq(P, s.q_face)) vertices.push_back(X.points.at(P));
      const auto& levi = fan.face(s.q_face).levi;
      for (size_t j = 0; j < ss.roots.size(); ++j)
        if (levi[ss.root_index[j]]) rays.push_back(Rat(-1) * ss.coroots[j]);
      Subspace fixed = iota_fixed_space(s.cfg);
      lin.insert(lin.end(), fixed.basis.begin(), fixed.basis.end());
      return build_fg_convex(n, fan.datum().space.inner, vertices, rays, lin);
    }
    return hull_support(s.cfg, s.gf, X, s.mode);
  }();

  // allowed recession directions: the lineality that the lattice sum mods out
  std::vector<QVec> allowed_gens = s.cfg.center.basis;
  if (s.mode != GermMode::Plain) {
    Subspace fixed = iota_fixed_space(s.cfg);
    allowed_gens.insert(allowed_gens.end(), fixed.basis.begin(), fixed.basis.end());
  }
  Subspace allowed = Subspace::span(n, allowed_gens);

  // homogenized constraints: base H-rep + J cutoffs + span(lattice) equations
  std::vector<QVec> ineqs, eqs;
  auto lift_ineq = [&](const QVec& a, const Rat& c) {
    QVec h = a;
    h.push_back(c);
    ineqs.push_back(h);
  };
  for (const auto& ai : base.ineqs) lift_ineq(ai.a, ai.c);
  for (const auto& ae : base.eqs) {
    QVec h = ae.a;
    h.push_back(ae.c);
    eqs.push_back(h);
  }
  for (size_t j = 0; j < ss.roots.size(); ++j) {
    if (j < s.k_inf.size() && s.k_inf[j]) continue;  // factor is identically 1
    // <alpha_j, H> >= -k_j - c0 - 1
    lift_ineq(ss.roots[j], Rat(s.k[j] + s.c0 + 1));
  }
  {
    QVec t(n + 1, Rat(0));
    t[n] = 1;
    ineqs.push_back(t);
  }
  Subspace lat_span = Subspace::span(n, s.lattice);
  if (intersect(lat_span, allowed).dim() != 0)
    throw MathError("lattice not transverse to the modded-out directions");
  QMat latmat = mat_from_rows(lat_span.basis, n);
  for (const auto& cutter : nullspace(latmat.transposed())) {
    QVec h = cutter;
    h.push_back(0);
    eqs.push_back(h);
  }

  std::vector<QVec> hrays, hlin;
  dd_solve(n + 1, ineqs, eqs, hrays, hlin);
  Region reg;
  bool recession = false;
  for (const auto& v : hrays) {
    if (v[n] > 0) {
      Rat f = 1 / v[n];
      reg.vertices.push_back(f * QVec(v.begin(), v.begin() + n));
    } else {
      recession = true;
    }
  }
  if (!hlin.empty()) recession = true;
  reg.empty = reg.vertices.empty();
  if (!reg.empty && recession) throw MathError("weight sum support is infinite");
  return reg;
}

}  // namespace

WeightSumResult weight_sum(const PadicWeightScenario& s, const OrthogonalSet& X, ExecMode exec) {
  const Fan& fan = *s.cfg.fan;
  auto rep = validate_orthogonal_set(fan, X);
  if (!rep.is_orthogonal || !rep.is_positive)
    throw MathError("weight_sum requires a positive orthogonal set");
  auto ss = small_simples(s.cfg);
  Region reg = support_region(s, X);
  WeightSumResult out;
  out.value = 0;
  if (reg.empty) return out;

  // integer bounding box in lattice coordinates
  size_t dl = s.lattice.size();
  std::vector<long> lo(dl), hi(dl);
  for (size_t i = 0; i < dl; ++i) {
    bool first = true;
    Rat mn, mx;
    for (const auto& v : reg.vertices) {
      QVec coords = coords_in(s.lattice, v);
      if (first) { mn = coords[i]; mx = coords[i]; first = false; }
      mn = std::min(mn, coords[i]);
      mx = std::max(mx, coords[i]);
    }
    mpz_class fl, ce;
    mpz_fdiv_q(fl.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_cdiv_q(ce.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    if (!fl.fits_slong_p() || !ce.fits_slong_p()) throw MathError("support box too large");
    lo[i] = fl.get_si();
    hi[i] = ce.get_si();
  }
  uint64_t box = 1;
  for (size_t i = 0; i < dl; ++i) {
    long w = hi[i] - lo[i] + 1;
    if (w <= 0) return out;
    box *= (uint64_t)w;
    if (box > 2000000) throw MathError("support box too large");
  }
  out.box_points = box;

  // per-simple integral pairing check on the lattice basis
  for (size_t j = 0; j < ss.roots.size(); ++j)
    for (const auto& bvec : s.lattice)
      if (dot(ss.roots[j], bvec).get_den() != 1)
        throw MathError("non-integral pairing between a simple root and the lattice");

  std::vector<long> widths(dl);
  for (size_t i = 0; i < dl; ++i) widths[i] = hi[i] - lo[i] + 1;

  GermEvaluator ev(s.cfg, s.gf, X, s.mode);
  auto term = [&](uint64_t flat) -> Rat {
    std::vector<long> nvec(dl);
    uint64_t rem = flat;
    for (size_t i = 0; i < dl; ++i) {
      nvec[i] = lo[i] + (long)(rem % (uint64_t)widths[i]);
      rem /= (uint64_t)widths[i];
    }
    QVec H = zero_vec(fan.datum().dim());
    for (size_t i = 0; i < dl; ++i) H += Rat(nvec[i]) * s.lattice[i];
    int ind = ev.gamma(s.mode == GermMode::QIota ? s.q_face : fan.full_face(), H);
    if (ind == 0) return Rat(0);
    Rat t = Rat(ind);
    for (size_t j = 0; j < ss.roots.size(); ++j) {
      if (j < s.k_inf.size() && s.k_inf[j]) continue;
      long m = s.k[j] + (long)dot(ss.roots[j], H).get_num().get_si();
      t *= unit_integral(s.q, s.c0, m);
      if (t == 0) break;
    }
    return t;
  };
  (void)term(0);  // surface configuration errors before entering the parallel sum
  out.value = sum_batch(box, term, exec);
  uint64_t hits = 0;
  for (uint64_t f = 0; f < box && box <= 4096; ++f)
    if (term(f) != 0) ++hits;
  out.support_points = hits;
  return out;
}

ExtractResult extract_polyexp(const PadicWeightScenario& s, const OrthogonalSet& X, long lo,
                              long hi, unsigned order_bound) {
  const Fan& fan = *s.cfg.fan;
  size_t dl = s.lattice.size();
  if (hi < lo) throw MathError("empty translation grid");

  Subspace fixed_dim_helper = s.mode != GermMode::Plain ? iota_fixed_space(s.cfg)
                                                        : Subspace::zero(fan.datum().dim());
  size_t r = fan.datum().dim() - s.cfg.center.dim();
  if (s.mode != GermMode::Plain)
    r -= (fixed_dim_helper.dim() - intersect(fixed_dim_helper, s.cfg.center).dim());

  std::map<std::vector<long>, Rat> values;
  std::map<std::vector<long>, Rat> depths;
  std::vector<std::vector<long>> grid;
  {
    std::vector<long> cur(dl, lo);
    while (true) {
      grid.push_back(cur);
      size_t i = 0;
      while (i < dl && ++cur[i] > hi) cur[i++] = lo;
      if (i == dl) break;
    }
  }
  Rat max_abs = 0;
  for (const auto& t : grid) {
    QVec shift = zero_vec(fan.datum().dim());
    for (size_t i = 0; i < dl; ++i) shift += Rat(t[i]) * s.lattice[i];
    OrthogonalSet Xt = translate_set(fan, X, shift);
    auto rep = validate_orthogonal_set(fan, Xt);
    if (!rep.is_orthogonal || !rep.is_positive) continue;  // outside the positive range
    Rat v = weight_sum(s, Xt).value;
    values[t] = v;
    depths[t] = rep.depth;
    max_abs = std::max(max_abs, abs(v));
  }
  if (values.empty()) throw MathError("no positive translate in the grid");

  // fit on the deepest points, then scan for the least depth below which
  // agreement breaks
  std::vector<Rat> depth_levels;
  for (const auto& [t, d] : depths) depth_levels.push_back(d);
  std::sort(depth_levels.begin(), depth_levels.end());
  depth_levels.erase(std::unique(depth_levels.begin(), depth_levels.end()), depth_levels.end());

  unsigned degree = (unsigned)r;
  std::optional<PolyExpFunction> fit;
  size_t deep_from = 0;
  for (size_t li = 0; li < depth_levels.size(); ++li) {
    std::map<std::vector<long>, Rat> sub;
    for (const auto& [t, v] : values)
      if (depths[t] >= depth_levels[li]) sub[t] = v;
    try {
      fit = fit_quasi_polynomial(sub, dl, degree, order_bound);
      deep_from = li;
      break;
    } catch (const FitError&) {
      continue;  // shallow points break the class; try deeper
    }
  }
  if (!fit) throw MathError("no stabilization within the grid: every depth level failed to fit");

  ExtractResult out;
  out.fit = *fit;
  out.degree_used = degree;
  out.max_abs = max_abs;
  out.threshold = depth_levels[deep_from];
  return out;
}

DescentCertificate verify_descent(const PadicWeightScenario& s, const QVec& epsilon,
                                  const std::vector<std::pair<std::string, OrthogonalSet>>& batch,
                                  ExecMode exec) {
  if (s.mode != GermMode::Iota) throw MathError("verify_descent expects an iota scenario");
  DescentCertificate cert;
  cert.coeffs = descent_coefficients(s.cfg, s.gf, epsilon);
  cert.all_equal = true;
  const Fan& fan = *s.cfg.fan;
  auto ss = small_simples(s.cfg);

  for (const auto& [id, X] : batch) {
    DescentRow row;
    row.id = id;
    row.lhs = weight_sum(s, X, exec).value;
    Rat rhs = 0;
    for (FaceId Q : cert.coeffs.compatible) {
      PadicWeightScenario sq = s;
      sq.mode = GermMode::QIota;
      sq.q_face = Q;
      rhs += cert.coeffs.d.at(Q) * weight_sum(sq, X, exec).value;
    }
    row.rhs = rhs;
    row.equal = (row.lhs == row.rhs);
    cert.all_equal = cert.all_equal && row.equal;
    cert.rows.push_back(row);

    // Levi-truncation invariance at depth >= 2σ(u): dropping the valuations
    // outside the Levi of Q must not change the Q-truncated weight
    auto rep = validate_orthogonal_set(fan, X);
    if (rep.depth >= Rat(2 * sigma_of(s))) {
      for (FaceId Q : cert.coeffs.compatible) {
        PadicWeightScenario sq = s;
        sq.mode = GermMode::QIota;
        sq.q_face = Q;
        PadicWeightScenario strunc = sq;
        const auto& levi = fan.face(Q).levi;
        for (size_t j = 0; j < ss.root_index.size(); ++j)
          if (!levi[ss.root_index[j]]) strunc.k[j] = 0;
        DescentRow trow;
        trow.id = id + "/Q=" + std::to_string(Q);
        trow.lhs = weight_sum(sq, X, exec).value;
        trow.rhs = weight_sum(strunc, X, exec).value;
        trow.equal = (trow.lhs == trow.rhs);
        cert.all_equal = cert.all_equal && trow.equal;
        cert.truncation_rows.push_back(trow);
      }
    }
  }
  return cert;
}

}  // namespace conefan
