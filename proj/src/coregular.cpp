#include "conefan/coregular.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace conefan {

namespace {

bool is_integral(const QVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

bool contains_vec(const std::vector<QVec>& set, const QVec& v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

// v = m * w for an integer m? returns m.
std::optional<long> integer_multiple_of(const QVec& v, const QVec& w) {
  std::optional<Rat> f;
  for (size_t i = 0; i < v.size(); ++i) {
    if (w[i] == 0) {
      if (v[i] != 0) return std::nullopt;
      continue;
    }
    Rat r = v[i] / w[i];
    if (f && !(*f == r)) return std::nullopt;
    f = r;
  }
  if (!f || f->get_den() != 1) return std::nullopt;
  return (long)f->get_num().get_si();
}

// primitive direction and multiplier of an integral covector
std::pair<QVec, long> primitive_of(const QVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x.get_num());
  if (g == 0) throw MathError("zero character has no primitive direction");
  QVec p(v.size());
  for (size_t i = 0; i < v.size(); ++i) p[i] = v[i] / Rat(g);
  // orient deterministically: first nonzero entry positive
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) {
      if (p[i] < 0) {
        for (auto& x : p) x = -x;
      }
      break;
    }
  }
  // recompute the (signed) multiplier against the oriented primitive
  auto m = integer_multiple_of(v, p);
  return {p, *m};
}

// the restriction map must be surjective over Z: its Smith form has all
// invariant factors equal to 1
bool lattice_surjective(const QMat& m) {
  // M surjective over Z  <=>  the integer kernel of [M | I] projected...
  // Simpler: M surjective iff the rows of M^T span a direct summand, i.e.
  // every standard basis vector of the target is an integer combination of
  // the columns of M. Solve M x = e_i over Z via the integer kernel of
  // [M | -e_i] asking for a solution with last coordinate 1.
  for (size_t i = 0; i < m.rows; ++i) {
    QMat aug(m.rows, m.cols + 1);
    for (size_t r = 0; r < m.rows; ++r) {
      for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
      aug.at(r, m.cols) = (r == i) ? -1 : 0;
    }
    // achievable last coordinates of the integer kernel form an ideal gZ;
    // e_i is hit over Z exactly when g = 1
    Int g = 0;
    for (const auto& z : integer_kernel(aug)) g = gcd(g, z[m.cols]);
    if (!(g == 1)) return false;
  }
  return true;
}

}  // namespace

void validate_pair(const SymmetricPairDatum& pair) {
  if (pair.restriction.rows != pair.rank_H || pair.restriction.cols != pair.rank_G)
    throw MathError("restriction matrix has wrong shape");
  for (const auto& a : pair.roots_G) {
    if (a.size() != pair.rank_G || !is_integral(a) || is_zero(a))
      throw MathError("G-root not a nonzero integral vector");
    if (!contains_vec(pair.roots_G, Rat(-1) * a))
      throw MathError("G-roots not closed under negation");
  }
  for (const auto& b : pair.roots_H) {
    if (b.size() != pair.rank_H || !is_integral(b) || is_zero(b))
      throw MathError("H-root not a nonzero integral vector");
    if (!contains_vec(pair.roots_H, Rat(-1) * b))
      throw MathError("H-roots not closed under negation");
  }
  for (const auto& x : pair.restriction.a)
    if (x.get_den() != 1) throw MathError("restriction matrix must be integral");
  if (!lattice_surjective(pair.restriction))
    throw MathError("restriction is not a lattice surjection");
}

RestrictedRoots restricted_roots(const SymmetricPairDatum& pair) {
  validate_pair(pair);
  RestrictedRoots out;
  for (const auto& a : pair.roots_G) {
    QVec r = pair.restriction.apply(a);
    out.restricted.push_back(r);
    if (is_zero(r)) {
      out.has_zero_restriction = true;
    } else {
      out.nonzero.push_back(r);
    }
  }
  return out;
}

CoregularVerdict is_coregular_symmetric(const SymmetricPairDatum& pair) {
  if (!pair.connected_H)
    throw MathError("only pairs with connected H are classified");
  auto rr = restricted_roots(pair);
  CoregularVerdict v;
  if (rr.has_zero_restriction) {
    v.coregular = false;
    v.witness = "a G-root restricts to zero on T_H";
    return v;
  }
  for (const auto& chi : rr.nonzero) {
    auto [chi0, kk] = primitive_of(chi);
    long k = std::labs(kk);
    for (long j = 0; j < k; ++j) {
      bool matched = false;
      for (const auto& beta : pair.roots_H) {
        auto m = integer_multiple_of(beta, chi0);
        if (!m) continue;
        if ((j * *m) % k == 0) { matched = true; break; }
      }
      if (!matched) {
        v.coregular = false;
        std::ostringstream os;
        os << "component " << j << " of {";
        for (size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << rat_str(chi[i]);
        os << " = 1} is not contained in any H-root divisor";
        v.witness = os.str();
        return v;
      }
    }
  }
  v.coregular = true;
  return v;
}

DivisorProfile discriminant_order_profile(const SymmetricPairDatum& pair, uint64_t seed) {
  auto rr = restricted_roots(pair);
  DivisorProfile prof;
  if (rr.has_zero_restriction) {
    prof.regular = false;
    prof.witness = "D_G vanishes identically on T_H (a root restricts to zero)";
    return prof;
  }

  // distinct primitive directions carrying G-divisors, with the component
  // modulus N = lcm of the multipliers along the direction
  std::map<QVec, long> modulus;
  std::map<QVec, std::vector<long>> g_mult, h_mult;
  for (const auto& chi : rr.nonzero) {
    auto [p, m] = primitive_of(chi);
    g_mult[p].push_back(m);
    modulus[p] = std::lcm(modulus.count(p) ? modulus[p] : 1l, std::labs(m));
  }
  for (const auto& beta : pair.roots_H) {
    auto [p, m] = primitive_of(beta);
    if (g_mult.count(p)) h_mult[p].push_back(m);
  }
  for (const auto& [p, ms] : g_mult) {
    std::set<long> distinct(ms.begin(), ms.end());
    std::set<long> absval;
    for (long m : distinct) absval.insert(std::labs(m));
    if (absval.size() > 1) prof.nonreduced_direction = true;
  }

  // exact curve: t(s) with coordinates c_i ζ^{j q_i} s^{w_i}; a factor
  // (1 - λ(t(s))) vanishes at s = 1 exactly when λ kills the generic part
  // (λ parallel to χ0) and the root of unity matches, with order 1 provided
  // <λ, w> != 0 — otherwise the curve is degenerate for λ and is redrawn.
  CounterRng rng(seed, "discriminant-curve");
  for (const auto& [p, gms] : g_mult) {
    long N = modulus[p];
    for (long j = 0; j < N; ++j) {
      DivisorComponent comp;
      comp.primitive = p;
      comp.modulus = N;
      comp.index = j;
      // factors on this component: λ = m*p with m*j ≡ 0 (mod N)
      auto vanishes = [&](long m) { return ((m % N) * (j % N)) % N == 0; };
      std::vector<long> relevant;  // multipliers of vanishing factors
      for (long m : gms)
        if (vanishes(m)) { comp.ord_G += 1; relevant.push_back(m); }
      auto hit = h_mult.find(p);
      if (hit != h_mult.end())
        for (long m : hit->second)
          if (vanishes(m)) { comp.ord_H2 += 2; relevant.push_back(m); }
      // draw a curve direction w with <m*p, w> != 0 for every vanishing factor
      if (!relevant.empty()) {
        bool drawn = false;
        for (uint64_t attempt = 0; attempt < 32 && !drawn; ++attempt) {
          QVec w(pair.rank_H);
          for (size_t i = 0; i < pair.rank_H; ++i)
            w[i] = Rat((long)rng.bounded(attempt, i, 19)) - 9;
          Rat pw = dot(p, w);
          if (pw != 0) {
            drawn = true;
          } else {
            ++prof.curve_redraws;
          }
        }
        if (!drawn) throw MathError("all candidate curves degenerate");
      }
      prof.components.push_back(comp);
    }
  }
  prof.regular = true;
  for (const auto& c : prof.components) {
    if (c.ord_H2 - c.ord_G < 0) {
      prof.regular = false;
      std::ostringstream os;
      os << "negative margin " << (c.ord_H2 - c.ord_G) << " along component " << c.index
         << " of modulus " << c.modulus;
      prof.witness = os.str();
      break;
    }
  }
  return prof;
}

SymmetricPairDatum transform_pair(const SymmetricPairDatum& pair, const QMat& on_G,
                                  const QMat& on_H) {
  if (abs(det(on_G)) != 1 || abs(det(on_H)) != 1)
    throw MathError("transform must be unimodular");
  SymmetricPairDatum out = pair;
  out.roots_G.clear();
  out.roots_H.clear();
  for (const auto& a : pair.roots_G) out.roots_G.push_back(on_G.apply(a));
  for (const auto& b : pair.roots_H) out.roots_H.push_back(on_H.apply(b));
  auto invG = inverse(on_G);
  out.restriction = on_H.mul(pair.restriction).mul(*invG);
  return out;
}

}  // namespace conefan
