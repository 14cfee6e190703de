#pragma once

#include "conefan/germ.hpp"
#include "conefan/polyexp.hpp"
#include "conefan/sampling.hpp"

namespace conefan {

// J(m): average of an additive character of conductor c0 over unit scalings
// at valuation m. 1 for m >= -c0, -1/(q-1) at m = -c0-1, 0 below.
Rat unit_integral(long q, long c0, long m);

struct PadicWeightScenario {
  GermFanConfig cfg;
  GermFan gf;
  std::vector<QVec> lattice;  // basis of L, transverse to the modded-out part
  long q = 2;
  long c0 = 0;
  std::vector<long> k;        // valuation of each small-simple coordinate of u
  std::vector<char> k_inf;    // per-simple flag: coordinate vanishes (factor 1)
  GermMode mode = GermMode::Plain;
  FaceId q_face = 0;          // used by QIota
};

struct WeightSumResult {
  Rat value;
  uint64_t support_points = 0;
  uint64_t box_points = 0;
};

// Σ over lattice points H with the Γ-indicator 1 of Π_α J(k_α + <α, H>).
// The summation region is certified finite (modulo the configured lineality)
// before anything is summed; throws on infinite support or non-integral
// pairings.
WeightSumResult weight_sum(const PadicWeightScenario& s, const OrthogonalSet& X,
                           ExecMode exec = ExecMode::Parallel);

// σ(u) = max(1, |k|_∞)
long sigma_of(const PadicWeightScenario& s);

struct ExtractResult {
  PolyExpFunction fit;
  Rat threshold;          // least depth beyond which fit and raw sums agree
  Rat max_abs;            // largest |weight| seen on the grid
  unsigned degree_used = 0;
};

// Fits t -> weight_sum(X + t) over the translation grid lo..hi (coordinates
// in the scenario lattice) and certifies the stabilization threshold.
ExtractResult extract_polyexp(const PadicWeightScenario& s, const OrthogonalSet& X, long lo,
                              long hi, unsigned order_bound = 2);

struct DescentRow {
  std::string id;
  Rat lhs, rhs;
  bool equal = false;
};

struct DescentCertificate {
  DescentCoefficients coeffs;
  std::vector<DescentRow> rows;
  std::vector<DescentRow> truncation_rows;  // Q-truncation invariance at large depth
  bool all_equal = false;
};

// Exact two-sided evaluation of the descent formula on a batch of positive
// orthogonal sets, plus the Levi-truncation invariance check for deep sets.
DescentCertificate verify_descent(const PadicWeightScenario& s, const QVec& epsilon,
                                  const std::vector<std::pair<std::string, OrthogonalSet>>& batch,
                                  ExecMode exec = ExecMode::Parallel);

}  // namespace conefan
