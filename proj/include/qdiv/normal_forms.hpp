#pragma once

#include <optional>

#include "qdiv/channel.hpp"

namespace qdiv {

// Delta = r1 * diag(lambdas) * r2 with r1, r2 proper rotations, tau = r1^T t.
// Unlike an SVD no reflections are allowed, so the sign of det(Delta) is
// carried by lambdas. Canonical representative: |l1| >= |l2| >= |l3| and at
// most one negative entry, always in the last slot.
struct SpecialOrthogonalNormalForm {
  Matrix3 r1;
  Vector3 lambdas;
  Vector3 tau;
  Matrix3 r2;

  // The channel D of the decomposition E = U1 D U2.
  PauliTransferMatrix diagonal_channel() const;
};

SpecialOrthogonalNormalForm special_orthogonal_normal_form(const PauliTransferMatrix& ptm);

// Parameters of the rank-deficient pattern
//   [[a, 0, 0, b], [0, d, 0, 0], [0, 0, -d, 0], [c, 0, 0, a + c - b]].
struct RankDeficientPattern {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  bool gauge_applied = false;  // sigma was conjugated by G = diag(1, 1, 1, -1)
};

// R = l1 * sigma * l2^T with l1, l2 proper orthochronous Lorentz transforms,
// where R = E * diag(1, 1, -1, 1) is the correlation matrix of the Choi state.
struct LorentzDecomposition {
  Matrix4 l1;
  Matrix4 sigma;
  Matrix4 l2;
  Vector4 s;              // diagonal of sigma; s0 >= s1 >= s2 >= |s3| when diagonal
  bool diagonal = true;
  double b_offdiag = 0.0;  // b of the rank-deficient pattern, 0 when diagonal
  std::optional<RankDeficientPattern> pattern;

  // Semi-axes of the Lorentz normal form channel diag(1, l1, l2, l3), scaled
  // so that s0 = 1; their product has the sign of det E.
  Vector3 channel_values() const;
};

// Certificates used by tests and reports.
double lorentz_residual(const Matrix4& l);  // max |L^T eta L - eta|
double reconstruction_residual(const LorentzDecomposition& d, const PauliTransferMatrix& ptm);

Matrix4 correlation_matrix(const PauliTransferMatrix& ptm);

// Throws Error(LorentzUnavailable) when R is singular or the spectrum of
// R eta R^T eta has a structure outside the diagonal / rank-deficient cases.
LorentzDecomposition lorentz_normal_form(const PauliTransferMatrix& ptm);

// Pauli tetrahedron: 1 + li - lj - lk >= 0 and 1 + l1 + l2 + l3 >= 0.
bool pauli_cp_region(const Vector3& lambdas);
// Entanglement-breaking octahedron: l1 + l2 + l3 <= 1 and li - lj - lk <= 1,
// together with the tetrahedron.
bool pauli_eb_region(const Vector3& lambdas);

}  // namespace qdiv
