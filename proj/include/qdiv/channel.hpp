#pragma once

// Qubit channel representations in the normalized Pauli basis
// {1, sx, sy, sz} / sqrt(2), and the conversions between them.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qdiv {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;
using Matrix4c = Eigen::Matrix4cd;
using Vector3 = Eigen::Vector3d;
using Vector4 = Eigen::Vector4d;

// sigma(0) is the identity; sigma(1..3) are sx, sy, sz.
const Matrix2c& sigma(int index);

// Bloch-ball action E(rho_r) = rho_{delta r + t}.
struct BlochAffine {
  Matrix3 delta;
  Vector3 t;
};

// 4x4 real matrix with entry (a, b) = tr(s_a E(s_b)) / 2. The first row is
// (1, 0, 0, 0) for every trace-preserving map; the constructor enforces it.
class PauliTransferMatrix {
 public:
  explicit PauliTransferMatrix(const Matrix4& m);

  static PauliTransferMatrix identity();
  static PauliTransferMatrix pauli(double l1, double l2, double l3);
  static PauliTransferMatrix pauli(const Vector3& lambdas);
  static PauliTransferMatrix from_bloch(const BlochAffine& affine);

  const Matrix4& matrix() const noexcept { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }
  BlochAffine bloch() const;

 private:
  Matrix4 m_;
};

// (id (x) E)[omega] for the maximally entangled projector omega; trace one.
class ChoiMatrix {
 public:
  explicit ChoiMatrix(const Matrix4c& m);

  const Matrix4c& matrix() const noexcept { return m_; }

 private:
  Matrix4c m_;
};

class KrausSet {
 public:
  explicit KrausSet(std::vector<Matrix2c> operators);

  const std::vector<Matrix2c>& operators() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

 private:
  std::vector<Matrix2c> ops_;
};

// Result of the CPTP predicate. Converts to bool.
struct CptpCheck {
  bool ok = false;
  double min_choi_eigenvalue = 0.0;
  double trace_deviation = 0.0;

  explicit operator bool() const noexcept { return ok; }
};

PauliTransferMatrix ptm_from_kraus(const KrausSet& kraus);
ChoiMatrix choi_from_ptm(const PauliTransferMatrix& ptm);
PauliTransferMatrix ptm_from_choi(const ChoiMatrix& choi);

CptpCheck is_cptp(const PauliTransferMatrix& ptm);
int kraus_rank(const PauliTransferMatrix& ptm);

// Concatenation: apply b first, then a.
PauliTransferMatrix compose(const PauliTransferMatrix& a, const PauliTransferMatrix& b);
double determinant(const PauliTransferMatrix& ptm);
bool is_unital(const PauliTransferMatrix& ptm);
Vector3 apply(const PauliTransferMatrix& ptm, const Vector3& bloch);

// Conjugation by the unitary whose Bloch rotation is `rotation` (must be SO(3)).
PauliTransferMatrix rotation_channel(const Matrix3& rotation);

// Helpers on raw 4x4 superoperators, which need not be CP or trace preserving
// (generators, intermediate maps, the collision-model commutator term).
Matrix2c apply_operator(const Matrix4& superop, const Matrix2c& x);
Matrix4c choi_of(const Matrix4& superop);
double choi_min_eigenvalue(const Matrix4& superop);
Matrix4 superop_from_map(const std::function<Matrix2c(const Matrix2c&)>& map);

// The maximally entangled projector omega as a 4x4 matrix.
const Matrix4c& maximally_entangled_projector();

// Smallest eigenvalue of a Hermitian 4x4 matrix.
double min_hermitian_eigenvalue(const Matrix4c& m);

}  // namespace qdiv
