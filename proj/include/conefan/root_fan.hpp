#pragma once

#include "conefan/convex.hpp"
#include "conefan/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace conefan {

struct AmbientSpace {
  size_t dim = 0;
  QMat lattice;  // columns form a basis of the normalization lattice (covolume 1)
  QMat inner;    // positive-definite symmetric rational form
};

// Checks: lattice nonsingular, inner symmetric positive definite (leading
// principal minors).
AmbientSpace make_ambient(size_t dim, QMat lattice, QMat inner);

struct RootFanDatum {
  AmbientSpace space;
  std::vector<QVec> roots;    // distinct nonzero covectors, closed under negation
  std::vector<QVec> coroots;  // <root_i, coroot_i> = 2
  std::vector<int> multiplicity;
  std::optional<QMat> theta;  // finite-order automorphism of the space
  std::optional<QMat> iota;   // involution of the space

  size_t dim() const { return space.dim; }
  size_t root_index(const QVec& covector) const;  // throws if absent
  size_t negation_of(size_t i) const;
  // Root permutation induced by pulling covectors back along the map
  // (root_j = root_i ∘ M); throws if the set is not preserved.
  std::vector<size_t> root_permutation(const QMat& m) const;
};

// Component of a classical-type construction request.
struct TypeComponent {
  std::string family;  // A, B, C, D, BC
  size_t rank = 0;
};

struct AutomorphismSpec {
  // kinds: id | neg | swap_components (order-2 permutation of equal
  // components, given as the image of each component index) | matrix
  std::string kind = "id";
  std::vector<size_t> component_image;
  std::optional<QMat> matrix;
};

struct RootDatumSpec {
  std::vector<TypeComponent> components;
  std::optional<AutomorphismSpec> theta;
  std::optional<AutomorphismSpec> iota;
  std::optional<QMat> lattice;  // default: identity
  std::optional<QMat> inner;    // default: type-appropriate invariant form
};

RootFanDatum build_root_datum(const RootDatumSpec& spec);

// Fold by the datum's involution: the restricted datum on the (-1)-eigenspace,
// coroots re-derived from the invariant form so reduced pairings are 2.
// Also returns the expression of the restricted space basis in ambient
// coordinates (columns of `embedding`).
struct FoldedDatum {
  RootFanDatum datum;
  QMat embedding;  // ambient x dim(folded)
};
FoldedDatum fold_by_iota(const RootFanDatum& datum);

// ----------------------------------------------------------------------

using FaceId = size_t;

struct Face {
  std::vector<char> pos;   // root i lies in the positive part
  std::vector<char> levi;  // root i and its negative both lie there
  size_t center_dim = 0;   // dim A_F
  bool is_chamber = false;
};

enum class Mode { Plain, Twisted, Iota };

struct FaceTags {
  std::vector<char> theta_stable;
  std::vector<char> iota_split;
  std::vector<char> iota_split_minimal;
};

// Evaluation frame for a nested pair P ⊆ Q in a given mode: the projected
// simple coroots (a basis of the relevant subspace), the matching restricted
// root functionals, and a solver giving fundamental-weight coordinates.
struct PairFrame {
  size_t k = 0;                      // |Δ_P^Q| in the mode = a_P^Q
  std::vector<QVec> coroots;         // projected simple coroots (basis)
  std::vector<QVec> root_reps;       // covector representatives for τ
  std::vector<QVec> frame_basis;     // coroots ++ basis of the mode center of Q
  QMat solve_matrix;                 // precomputed inverse for coordinates
  Subspace domain;                   // mode center of P

  // coordinates of the projection of h in the frame (length k used)
  QVec weight_coords(const QVec& h_projected) const;
};

class Fan {
 public:
  explicit Fan(const RootFanDatum& datum);

  const RootFanDatum& datum() const { return *datum_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId f) const { return faces_[f]; }
  FaceId full_face() const { return full_face_; }
  const std::vector<FaceId>& chambers() const { return chambers_; }
  FaceId face_by_mask(const std::vector<char>& pos) const;  // throws if absent

  // Σ_a ⊆ Σ_b
  bool leq(FaceId a, FaceId b) const;
  // Levi(a) ⊆ Levi(b)
  bool levi_leq(FaceId a, FaceId b) const;
  bool same_levi(FaceId a, FaceId b) const;

  const Subspace& center(FaceId f) const;     // A_F
  const Subspace& levi_span(FaceId f) const;  // span of Levi coroots
  // projection onto A_F along the Levi coroot span
  QVec project_to_center(FaceId f, const QVec& v) const;

  const FaceTags& tags() const;

  // Mode data: participating faces, chambers of the mode, the mode
  // projector and subspace.
  struct ModeCtx {
    Mode mode = Mode::Plain;
    QMat projector;                 // ambient -> ambient
    Subspace subspace;              // image of the projector
    std::vector<FaceId> faces;      // participating faces
    std::vector<FaceId> chambers;   // minimal participating faces
  };
  const ModeCtx& mode_ctx(Mode m) const;

  const PairFrame& frame(FaceId p, FaceId q, Mode m) const;
  // mode center of a face: A_F ∩ mode subspace
  Subspace mode_center(FaceId f, Mode m) const;
  // full mode projection: onto A_F along Levi span, then the mode projector
  QVec mode_project(FaceId f, Mode m, const QVec& v) const;
  // the same projection as a matrix (cached)
  const QMat& face_projection_matrix(FaceId f, Mode m) const;

  // Wall coroot between adjacent chambers of the mode, if any.
  std::optional<QVec> adjacent_coroot(FaceId p, FaceId q, Mode m) const;

  // Simple data of a chamber in the mode (Δ_P with coroots).
  struct SimpleSystem {
    std::vector<QVec> roots;    // restricted simple root functionals
    std::vector<QVec> coroots;  // matching projected coroots
  };
  SimpleSystem chamber_simples(FaceId p, Mode m) const;

 private:
  const RootFanDatum* datum_;
  std::vector<Face> faces_;
  std::vector<FaceId> chambers_;
  FaceId full_face_ = 0;
  std::map<std::vector<char>, FaceId> by_mask_;

  mutable std::map<FaceId, Subspace> center_cache_;
  mutable std::map<FaceId, Subspace> levi_span_cache_;
  mutable std::optional<FaceTags> tags_;
  mutable std::map<int, ModeCtx> mode_cache_;
  mutable std::map<std::tuple<FaceId, FaceId, int>, PairFrame> frame_cache_;
  mutable std::map<std::pair<FaceId, int>, QMat> face_proj_cache_;

  void enumerate();
};

// Builds a fan and keeps the datum alive with it.
struct OwnedFan {
  std::shared_ptr<RootFanDatum> datum;
  std::shared_ptr<Fan> fan;
};
OwnedFan make_fan(RootFanDatum datum);

}  // namespace conefan
