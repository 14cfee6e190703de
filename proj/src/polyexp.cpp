#include "conefan/polyexp.hpp"

#include <algorithm>

namespace conefan {

Cyc CharacterExp::eval(const std::vector<long>& m) const {
  long e = 0;
  for (size_t i = 0; i < residue.size(); ++i)
    e += ((residue[i] % (long)order) * (m[i] % (long)order)) % (long)order;
  return Cyc::root_power(order, e);
}

bool CharacterExp::operator<(const CharacterExp& o) const {
  if (order != o.order) return order < o.order;
  return residue < o.residue;
}

bool CharacterExp::operator==(const CharacterExp& o) const {
  return order == o.order && residue == o.residue;
}

namespace {

Rat monomial_value(const std::vector<unsigned>& exps, const std::vector<long>& m) {
  Rat v = 1;
  for (size_t i = 0; i < exps.size(); ++i)
    for (unsigned e = 0; e < exps[i]; ++e) v *= Rat(m[i]);
  return v;
}

void enumerate_monomials(size_t dim, unsigned degree, std::vector<unsigned>& cur,
                         std::vector<std::vector<unsigned>>& out, unsigned used) {
  if (cur.size() == dim) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e + used <= degree; ++e) {
    cur.push_back(e);
    enumerate_monomials(dim, degree, cur, out, used + e);
    cur.pop_back();
  }
}

}  // namespace

Cyc PolyExpFunction::eval(const std::vector<long>& m) const {
  Cyc total(Rat(0), order_bound);
  for (const auto& t : terms) {
    Rat poly = 0;
    Cyc acc(Rat(0), order_bound);
    for (const auto& [mono, coeff] : t.coeffs) acc = acc + coeff * monomial_value(mono, m);
    total = total + acc * t.chi.eval(m);
    (void)poly;
  }
  return total;
}

Rat PolyExpFunction::eval_rat(const std::vector<long>& m) const { return eval(m).rational_part(); }

bool PolyExpFunction::operator==(const PolyExpFunction& o) const {
  if (dim != o.dim || terms.size() != o.terms.size()) return false;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (!(terms[i].chi == o.terms[i].chi)) return false;
    if (terms[i].coeffs.size() != o.terms[i].coeffs.size()) return false;
    auto it = o.terms[i].coeffs.begin();
    for (const auto& [mono, c] : terms[i].coeffs) {
      if (mono != it->first || !(c == it->second)) return false;
      ++it;
    }
  }
  return true;
}

PolyExpFunction fit_quasi_polynomial(const std::map<std::vector<long>, Rat>& samples, size_t dim,
                                     unsigned degree_bound, unsigned order_bound) {
  if (samples.empty()) throw FitError("fit: no samples");
  for (const auto& [m, v] : samples)
    if (m.size() != dim) throw FitError("fit: sample point of wrong dimension");
  unsigned M = std::max(1u, order_bound);
  unsigned phi = euler_phi(M);

  // characters: residues in [0,M)^dim, lexicographic
  std::vector<std::vector<long>> residues;
  {
    std::vector<long> cur(dim, 0);
    while (true) {
      residues.push_back(cur);
      size_t i = 0;
      while (i < dim && ++cur[i] == (long)M) cur[i++] = 0;
      if (i == dim) break;
    }
    std::sort(residues.begin(), residues.end());
  }
  std::vector<std::vector<unsigned>> monos;
  {
    std::vector<unsigned> cur;
    enumerate_monomials(dim, degree_bound, cur, monos, 0);
    std::sort(monos.begin(), monos.end());
  }

  size_t unknown_blocks = residues.size() * monos.size();
  size_t ncols = unknown_blocks * phi;
  size_t nrows = samples.size() * phi;
  QMat A(nrows, ncols);
  QVec b(nrows, Rat(0));

  size_t srow = 0;
  for (const auto& [m, value] : samples) {
    for (size_t rb = 0; rb < residues.size(); ++rb) {
      CharacterExp chi{M, residues[rb]};
      Cyc chival = chi.eval(m);
      for (size_t mb = 0; mb < monos.size(); ++mb) {
        Rat mv = monomial_value(monos[mb], m);
        if (mv == 0 && !(monos[mb] == std::vector<unsigned>(dim, 0u))) {
          // zero contribution
        }
        // unknown coefficient has phi rational coordinates c_j (coeff of ζ^j);
        // contribution of c_j is mv * ζ^{j} * chival
        for (unsigned j = 0; j < phi; ++j) {
          Cyc contrib = Cyc::root_power(M, j) * chival * mv;
          const auto& coords = contrib.coords();
          size_t col = (rb * monos.size() + mb) * phi + j;
          for (unsigned r = 0; r < phi; ++r)
            if (coords[r] != 0) A.at(srow * phi + r, col) = coords[r];
        }
      }
    }
    b[srow * phi + 0] = value;  // rational sample: higher ζ-coordinates are 0
    ++srow;
  }

  // solve with consistency and uniqueness checks
  QMat aug(nrows, ncols + 1);
  for (size_t i = 0; i < nrows; ++i) {
    for (size_t j = 0; j < ncols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, ncols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == ncols)
    throw FitError("fit: samples are inconsistent with the class");
  if (piv.size() < ncols) throw FitError("fit: under-determined grid");
  QVec x(ncols);
  for (size_t k2 = 0; k2 < piv.size(); ++k2) x[piv[k2]] = aug.at(k2, ncols);

  PolyExpFunction f;
  f.dim = dim;
  f.degree_bound = degree_bound;
  f.order_bound = M;
  for (size_t rb = 0; rb < residues.size(); ++rb) {
    PolyExpTerm term;
    term.chi = CharacterExp{M, residues[rb]};
    for (size_t mb = 0; mb < monos.size(); ++mb) {
      std::vector<Rat> coords(phi);
      bool nonzero = false;
      for (unsigned j = 0; j < phi; ++j) {
        coords[j] = x[(rb * monos.size() + mb) * phi + j];
        if (coords[j] != 0) nonzero = true;
      }
      if (!nonzero) continue;
      Cyc c(Rat(0), M);
      for (unsigned j = 0; j < phi; ++j)
        c = c + Cyc::root_power(M, j) * coords[j];
      term.coeffs[monos[mb]] = c;
    }
    if (!term.coeffs.empty()) f.terms.push_back(std::move(term));
  }
  // exactness re-check on every sample
  for (const auto& [m, value] : samples)
    if (!(f.eval(m) == Cyc(value, M))) throw FitError("fit: verification failed on a sample");
  return f;
}

}  // namespace conefan
