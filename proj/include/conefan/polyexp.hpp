#pragma once

#include "conefan/cyclotomic.hpp"
#include "conefan/rational.hpp"

#include <map>

namespace conefan {

// χ(m) = ζ_order ^ (Σ residue_i m_i)
struct CharacterExp {
  unsigned order = 1;
  std::vector<long> residue;

  Cyc eval(const std::vector<long>& m) const;
  bool operator<(const CharacterExp& o) const;
  bool operator==(const CharacterExp& o) const;
};

struct PolyExpTerm {
  CharacterExp chi;
  // monomial exponent vector -> coefficient; coefficients are rational for
  // character orders up to 2 and live in the cyclotomic field otherwise
  std::map<std::vector<unsigned>, Cyc> coeffs;
};

struct PolyExpFunction {
  size_t dim = 1;
  unsigned degree_bound = 0;
  unsigned order_bound = 1;
  std::vector<PolyExpTerm> terms;

  Cyc eval(const std::vector<long>& m) const;
  Rat eval_rat(const std::vector<long>& m) const;  // throws when not rational
  bool operator==(const PolyExpFunction& o) const;
};

struct FitError : MathError {
  using MathError::MathError;
};

// Exact interpolation in the class of finite-order-character quasi-polynomials
// of total degree <= degree_bound with character order dividing order_bound.
// All supplied samples participate: surplus samples act as consistency and
// extrapolation checks. Throws FitError on an under-determined grid or on
// samples outside the class.
PolyExpFunction fit_quasi_polynomial(const std::map<std::vector<long>, Rat>& samples, size_t dim,
                                     unsigned degree_bound, unsigned order_bound);

}  // namespace conefan
