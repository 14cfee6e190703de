#include "conefan/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace conefan {

Json rat_to_json(const Rat& x) { return Json(rat_str(x)); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat((long)j.get<long long>());
  return parse_rat(j.get<std::string>());
}

Json vec_to_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat_to_json(x));
  return a;
}

QVec vec_from_json(const Json& j) {
  QVec v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

Json mat_to_json(const QMat& m) {
  Json a = Json::array();
  for (size_t i = 0; i < m.rows; ++i) a.push_back(vec_to_json(m.row(i)));
  return a;
}

QMat mat_from_json(const Json& j) {
  std::vector<QVec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r));
  if (rows.empty()) return QMat(0, 0);
  return mat_from_rows(rows, rows[0].size());
}

RootDatumSpec datum_spec_from_json(const Json& j) {
  RootDatumSpec spec;
  for (const auto& c : j.at("type_components")) {
    TypeComponent tc;
    tc.family = c.at("family").get<std::string>();
    tc.rank = c.at("rank").get<size_t>();
    spec.components.push_back(tc);
  }
  auto parse_auto = [](const Json& a) {
    AutomorphismSpec s;
    s.kind = a.at("kind").get<std::string>();
    if (a.contains("component_image"))
      s.component_image = a.at("component_image").get<std::vector<size_t>>();
    if (a.contains("rows")) s.matrix = mat_from_json(a.at("rows"));
    return s;
  };
  if (j.contains("theta")) spec.theta = parse_auto(j.at("theta"));
  if (j.contains("iota")) spec.iota = parse_auto(j.at("iota"));
  if (j.contains("lattice")) spec.lattice = mat_from_json(j.at("lattice"));
  if (j.contains("inner_product")) spec.inner = mat_from_json(j.at("inner_product"));
  return spec;
}

std::string face_name(const Fan& fan, FaceId f) {
  const auto& face = fan.face(f);
  std::string s;
  for (size_t i = 0; i < face.pos.size(); ++i) {
    if (face.levi[i]) s.push_back('0');
    else if (face.pos[i]) s.push_back('+');
    else s.push_back('-');
  }
  return s;
}

FaceId face_by_name(const Fan& fan, const std::string& name) {
  size_t nr = fan.datum().roots.size();
  if (name.size() != nr) throw MathError("face name has wrong length: " + name);
  std::vector<char> pos(nr);
  for (size_t i = 0; i < nr; ++i) pos[i] = (name[i] == '+' || name[i] == '0');
  return fan.face_by_mask(pos);
}

Json orthoset_to_json(const Fan& fan, const OrthogonalSet& y) {
  Json j;
  j["mode"] = y.mode == Mode::Plain ? "plain" : (y.mode == Mode::Twisted ? "twisted" : "iota");
  Json pts = Json::object();
  for (const auto& [f, v] : y.points) pts[face_name(fan, f)] = vec_to_json(v);
  j["points"] = pts;
  return j;
}

OrthogonalSet orthoset_from_json(const Fan& fan, const Json& j) {
  OrthogonalSet y;
  std::string m = j.at("mode").get<std::string>();
  y.mode = m == "plain" ? Mode::Plain : (m == "twisted" ? Mode::Twisted : Mode::Iota);
  for (const auto& [k, v] : j.at("points").items())
    y.points[face_by_name(fan, k)] = vec_from_json(v);
  return y;
}

Json fg_convex_to_json(const FGConvexSet& s) {
  Json j;
  Json vs = Json::array(), rs = Json::array(), ls = Json::array();
  for (const auto& v : s.vertices) vs.push_back(vec_to_json(v));
  for (const auto& r : s.rays) rs.push_back(vec_to_json(r));
  for (const auto& l : s.lineality) ls.push_back(vec_to_json(l));
  j["vertices"] = vs;
  j["rays"] = rs;
  j["lineality"] = ls;
  return j;
}

SymmetricPairDatum pair_from_json(const Json& j) {
  SymmetricPairDatum p;
  p.label = j.at("label").get<std::string>();
  p.rank_G = j.at("XG_rank").get<size_t>();
  for (const auto& r : j.at("roots_G")) p.roots_G.push_back(vec_from_json(r));
  p.restriction = mat_from_json(j.at("restriction"));
  p.rank_H = p.restriction.rows;
  for (const auto& r : j.at("roots_H")) p.roots_H.push_back(vec_from_json(r));
  p.connected_H = j.at("connected_H").get<bool>();
  if (j.contains("rk_X")) p.declared_rk_X = j.at("rk_X").get<long>();
  return p;
}

Json polyexp_to_json(const PolyExpFunction& f) {
  Json j;
  j["dim"] = f.dim;
  j["degree_bound"] = f.degree_bound;
  j["order_bound"] = f.order_bound;
  Json terms = Json::array();
  for (const auto& t : f.terms) {
    Json jt;
    jt["order"] = t.chi.order;
    jt["residue"] = t.chi.residue;
    Json cs = Json::array();
    for (const auto& [mono, c] : t.coeffs) {
      Json jc;
      jc["monomial"] = mono;
      Json coords = Json::array();
      for (const auto& x : c.coords()) coords.push_back(rat_to_json(x));
      jc["coeff"] = coords;
      cs.push_back(jc);
    }
    jt["coeffs"] = cs;
    terms.push_back(jt);
  }
  j["terms"] = terms;
  return j;
}

const Corpus::FanEntry& Corpus::fan(const std::string& name) const {
  for (const auto& f : fans)
    if (f.name == name) return f;
  throw MathError("no fan named " + name + " in the corpus");
}

const Corpus::GermEntry& Corpus::germ(const std::string& name) const {
  for (const auto& g : germs)
    if (g.name == name) return g;
  throw MathError("no germ config named " + name + " in the corpus");
}

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MathError("cannot open corpus file " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace

Corpus load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  Corpus c;
  Json fans = read_json((fs::path(dir) / "fans.json").string());
  for (const auto& jf : fans) {
    Corpus::FanEntry e;
    e.name = jf.at("name").get<std::string>();
    e.fan = make_fan(build_root_datum(datum_spec_from_json(jf)));
    c.fans.push_back(std::move(e));
  }

  Json germs = read_json((fs::path(dir) / "germ.json").string());
  for (const auto& jg : germs) {
    Corpus::GermEntry e;
    e.name = jg.at("name").get<std::string>();
    e.datum = jg.at("datum").get<std::string>();
    const Fan& fan = *c.fan(e.datum).fan;
    const auto& d = fan.datum();
    e.cfg.fan = &fan;
    e.cfg.base_mode = Mode::Plain;
    size_t nr = d.roots.size();
    e.cfg.small.assign(nr, 0);
    e.cfg.bx_sign.assign(nr, 0);
    for (const auto& idx : jg.at("small_indices")) {
      size_t i = idx.get<size_t>();
      e.cfg.small[i] = 1;
      e.cfg.small[d.negation_of(i)] = 1;
    }
    for (const auto& idx : jg.at("bx_positive")) {
      size_t i = idx.get<size_t>();
      if (!e.cfg.small[i]) throw MathError("bx_positive index outside the small system");
      e.cfg.bx_sign[i] = 1;
    }
    for (size_t i = 0; i < nr; ++i)
      if (e.cfg.small[i] && !e.cfg.bx_sign[i] && !e.cfg.bx_sign[d.negation_of(i)])
        throw MathError("small root " + std::to_string(i) + " has no B_x sign");
    e.cfg.center = Subspace::zero(d.dim());
    if (jg.contains("center")) {
      std::vector<QVec> gens;
      for (const auto& v : jg.at("center")) gens.push_back(vec_from_json(v));
      e.cfg.center = Subspace::span(d.dim(), gens);
    }
    e.cfg.use_iota = jg.value("use_iota", false);
    e.gf = enumerate_germ_fan(e.cfg);
    if (jg.contains("epsilon")) e.epsilon = vec_from_json(jg.at("epsilon"));
    c.germs.push_back(std::move(e));
  }

  Json convex = read_json((fs::path(dir) / "convex.json").string());
  for (const auto& js : convex) {
    Corpus::ConvexEntry e;
    e.name = js.at("name").get<std::string>();
    size_t dim = js.at("dim").get<size_t>();
    QMat inner = js.contains("inner") ? mat_from_json(js.at("inner")) : QMat::identity(dim);
    std::vector<QVec> vs, rs, ls;
    for (const auto& v : js.at("vertices")) vs.push_back(vec_from_json(v));
    if (js.contains("rays"))
      for (const auto& v : js.at("rays")) rs.push_back(vec_from_json(v));
    if (js.contains("lineality"))
      for (const auto& v : js.at("lineality")) ls.push_back(vec_from_json(v));
    e.set = build_fg_convex(dim, inner, vs, rs, ls);
    if (js.contains("projections"))
      for (const auto& pj : js.at("projections")) {
        std::vector<QVec> b;
        for (const auto& v : pj.at("b")) b.push_back(vec_from_json(v));
        e.projections.emplace_back(b, vec_from_json(pj.at("xi")));
      }
    c.convexes.push_back(std::move(e));
  }

  Json pairs = read_json((fs::path(dir) / "pairs.json").string());
  for (const auto& jp : pairs) {
    Corpus::PairEntry e;
    e.pair = pair_from_json(jp);
    e.expect_coregular = jp.at("expect_coregular").get<bool>();
    c.pairs.push_back(std::move(e));
  }

  Json padics = read_json((fs::path(dir) / "padic.json").string());
  for (const auto& jp : padics) {
    Corpus::PadicEntry e;
    e.name = jp.at("name").get<std::string>();
    e.germ = jp.at("germ").get<std::string>();
    const auto& g = c.germ(e.germ);
    const Fan& fan = *c.fan(g.datum).fan;
    e.scenario.cfg = g.cfg;
    e.scenario.cfg.fan = &fan;
    e.scenario.gf = g.gf;
    e.scenario.q = jp.at("q").get<long>();
    e.scenario.c0 = jp.at("c0").get<long>();
    e.scenario.k = jp.at("k").get<std::vector<long>>();
    for (const auto& v : jp.at("lattice")) e.scenario.lattice.push_back(vec_from_json(v));
    std::string mode = jp.value("mode", "plain");
    e.scenario.mode = mode == "plain" ? GermMode::Plain
                                      : (mode == "iota" ? GermMode::Iota : GermMode::QIota);
    e.X = orthoset_from_json(fan, jp.at("X"));
    if (jp.contains("epsilon")) e.epsilon = vec_from_json(jp.at("epsilon"));
    e.grid_lo = jp.value("grid_lo", 0);
    e.grid_hi = jp.value("grid_hi", 4);
    c.padics.push_back(std::move(e));
  }
  return c;
}

}  // namespace conefan
