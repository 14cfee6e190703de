#pragma once

#include "conefan/cone_calc.hpp"
#include "conefan/convex.hpp"

namespace conefan {

// Big system with a distinguished subsystem and a chamber of it; the faces
// of the big fan compatible with that chamber carry the germ calculus.
struct GermFanConfig {
  const Fan* fan = nullptr;
  Mode base_mode = Mode::Plain;
  std::vector<char> small;    // subsystem mask over root indices (negation closed)
  std::vector<char> bx_sign;  // positive part of the small chamber (per root index)
  Subspace center;            // contained in the common kernel of all roots
  bool use_iota = false;      // ι structure taken from the datum
};

struct GermFan {
  std::vector<FaceId> p_bx;       // chambers whose small trace is B_x
  std::vector<FaceId> f_bx;       // faces whose positive part contains B_x^+
  std::vector<FaceId> f_bx_iota;  // ι-split members of f_bx
  bool reflections_preserve_roots = false;
  std::map<std::vector<char>, size_t> fiber_sizes;  // small trace -> chamber count
};

// Validates the config (small chamber genuine, center inside the root
// kernel) and enumerates the compatible chambers/faces. The partition of all
// chambers by small trace is computed; when the small reflections preserve
// the big root set the equality of fibers under them is verified too.
GermFan enumerate_germ_fan(const GermFanConfig& cfg);

// Simple roots of the small chamber with their coroots (signed).
struct SmallSimples {
  std::vector<QVec> roots;
  std::vector<QVec> coroots;
  std::vector<size_t> root_index;  // index of the signed representative root
};
SmallSimples small_simples(const GermFanConfig& cfg);

enum class GermMode { Plain, Iota, QIota };

// Γ_{B_x}^{Q}(H, X) and its ι-variants.
int gamma_bx_value(const GermFanConfig& cfg, const GermFan& gf, FaceId Q, const QVec& H,
                   const OrthogonalSet& X, GermMode mode);

// For positive X: the support of Γ_{B_x}(·, X) as a finitely generated
// convex set (vertices = compatible-chamber points, rays = negative small
// simple coroots, plus the configured lineality; the ι version projects and
// adds the fixed space).
FGConvexSet hull_support(const GermFanConfig& cfg, const GermFan& gf, const OrthogonalSet& X,
                         GermMode mode);

struct DescentCoefficients {
  QVec epsilon;
  std::vector<FaceId> compatible;  // ε-compatible faces of f_bx
  std::map<FaceId, Rat> d;
  std::string genericity_report;
};

// Coefficients of the descent identity for a generic ε in the projected
// closed positive chamber; throws when ε fails the exact genericity check.
DescentCoefficients descent_coefficients(const GermFanConfig& cfg, const GermFan& gf,
                                         const QVec& epsilon);

struct SplitWitness {
  bool equal = false;
  int lhs = 0;
  Rat rhs;
  std::string table;
};

// Splitting identity Γ^R(H, X+Y) = Σ_Q Γ^Q(H, X) Γ_Q^R(H - X_Q, Y_Q).
SplitWitness check_splitting(const GermFanConfig& cfg, const GermFan& gf, const OrthogonalSet& X,
                             const OrthogonalSet& Y, FaceId R, const QVec& H);

// The fixed subspace of the involution.
Subspace iota_fixed_space(const GermFanConfig& cfg);

// Precomputed evaluator for one orthogonal set: all frames, projections and
// offsets are folded into small matrices so that per-point evaluation is a
// handful of exact dot products. Agrees with gamma_bx_value (the reference
// path) by construction; the test suite compares them.
class GermEvaluator {
 public:
  GermEvaluator(const GermFanConfig& cfg, const GermFan& gf, const OrthogonalSet& X,
                GermMode mode);

  // Γ^Q(H, X) in the chosen mode (Plain or Iota; QIota delegates per point).
  int gamma(FaceId Q, const QVec& H) const;
  // τ_Q^R(H - X_Q) in the mode's frames.
  bool tau(FaceId Q, FaceId R, const QVec& H) const;
  // φ_Q^R(H - X_Q - extra) in the mode's frames.
  bool phi(FaceId Q, FaceId R, const QVec& H, const QVec& extra) const;
  const std::vector<FaceId>& face_list() const { return faces_; }
  const GermFanConfig& config() const { return *cfg_; }
  const OrthogonalSet& set() const { return *X_; }

 private:
  struct HatRows {
    std::vector<QVec> rows;  // k covectors
    QVec offset;             // precomputed row·X_P
    int sign = 1;            // (-1)^k
  };
  struct TauRows {
    std::vector<QVec> rows;
    QVec offset;
  };
  const GermFanConfig* cfg_;
  const GermFan* gf_;
  const OrthogonalSet* X_;
  GermMode mode_;
  std::vector<FaceId> faces_;
  std::map<FaceId, std::vector<HatRows>> gamma_terms_;          // per Q
  std::map<std::pair<FaceId, FaceId>, TauRows> tau_rows_;       // per (Q, R)
  std::map<std::pair<FaceId, FaceId>, HatRows> hat_rows_qr_;    // per (Q, R), for phi
};

}  // namespace conefan
