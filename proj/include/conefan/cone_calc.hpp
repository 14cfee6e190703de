#pragma once

#include "conefan/orthoset.hpp"

namespace conefan {

enum class IndicatorKind { Tau, TauHat, Phi };

struct ConeIndicatorQuery {
  FaceId inner_face = 0;  // P for tau/tau_hat, Q for phi
  FaceId outer_face = 0;  // Q for tau/tau_hat, R for phi
  QVec point;             // ambient coordinates; projected internally
  IndicatorKind kind = IndicatorKind::Tau;
  Mode mode = Mode::Plain;
};

// tau: all simple-root values > 0.  tau_hat: all fundamental-weight values
// > 0.  phi: all fundamental-weight values <= 0.
int cone_indicator(const Fan& fan, const ConeIndicatorQuery& q);

// Faces P of the mode with Levi(P) ⊇ Levi(L) and Σ_P ⊆ Σ_Q.
std::vector<FaceId> faces_between(const Fan& fan, FaceId levi_of, FaceId below, Mode mode);

// Γ^Q_L(H, Y) = Σ_P (-1)^{a_P^Q} τ̂_P^Q(H - Y_P) over faces P between L and Q.
int gamma_LQ(const Fan& fan, FaceId L, FaceId Q, const QVec& H, const OrthogonalSet& Y);

// Exact volume of Conv{Y_P : P ∈ P(L), P ⊆ Q} inside the A_L^Q slice,
// against the normalization lattice. Requires Y positive and orthogonal.
Rat hull_volume(const Fan& fan, FaceId L, FaceId Q, const OrthogonalSet& Y);

// Γ_Q^R(H, X) = Σ_{Q ⊆ P ⊆ R} (-1)^{a_P^R} τ_Q^P(H) τ̂_P^R(H - X).
int gamma_QR(const Fan& fan, FaceId Q, FaceId R, const QVec& H, const QVec& X, Mode mode);

}  // namespace conefan
