#include "qdiv/channel.hpp"

#include <cmath>
#include <sstream>

#include "qdiv/error.hpp"
#include "qdiv/tolerances.hpp"

namespace qdiv {

namespace {

using namespace std::complex_literals;

std::array<Matrix2c, 4> make_paulis() {
  std::array<Matrix2c, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -1i, 1i, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

Matrix4c make_omega() {
  Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return phi * phi.adjoint();
}

// Partial trace over the second tensor factor of a 4x4 operator.
Matrix2c trace_second(const Matrix4c& m) {
  Matrix2c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return r;
}

// Partial trace over the first tensor factor.
Matrix2c trace_first(const Matrix4c& m) {
  Matrix2c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = m(i, j) + m(2 + i, 2 + j);
  return r;
}

std::string format_residual(const char* what, double value) {
  std::ostringstream os;
  os << what << " (residual " << value << ")";
  return os.str();
}

}  // namespace

const Matrix2c& sigma(int index) {
  static const std::array<Matrix2c, 4> paulis = make_paulis();
  return paulis.at(static_cast<std::size_t>(index));
}

const Matrix4c& maximally_entangled_projector() {
  static const Matrix4c omega = make_omega();
  return omega;
}

// --- PauliTransferMatrix ---------------------------------------------------

PauliTransferMatrix::PauliTransferMatrix(const Matrix4& m) : m_(m) {
  if (!m_.allFinite()) throw Error(ErrorKind::InvalidArgument, "PTM has non-finite entries");
  const double dev = (m_.row(0) - Eigen::RowVector4d(1, 0, 0, 0)).cwiseAbs().maxCoeff();
  if (dev > tol::kTracePreserving)
    throw Error(ErrorKind::NotCptp,
                format_residual("PTM first row is not (1,0,0,0); map is not trace preserving", dev),
                dev);
}

PauliTransferMatrix PauliTransferMatrix::identity() { return PauliTransferMatrix(Matrix4::Identity()); }

PauliTransferMatrix PauliTransferMatrix::pauli(double l1, double l2, double l3) {
  return PauliTransferMatrix(Vector4(1.0, l1, l2, l3).asDiagonal().toDenseMatrix());
}

PauliTransferMatrix PauliTransferMatrix::pauli(const Vector3& lambdas) {
  return pauli(lambdas(0), lambdas(1), lambdas(2));
}

PauliTransferMatrix PauliTransferMatrix::from_bloch(const BlochAffine& affine) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.0;
  m.block<3, 1>(1, 0) = affine.t;
  m.block<3, 3>(1, 1) = affine.delta;
  return PauliTransferMatrix(m);
}

BlochAffine PauliTransferMatrix::bloch() const {
  return {m_.block<3, 3>(1, 1), m_.block<3, 1>(1, 0)};
}

// --- ChoiMatrix -------------------------------------------------------------

ChoiMatrix::ChoiMatrix(const Matrix4c& m) : m_(m) {
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kHermitian)
    throw Error(ErrorKind::InvalidArgument, format_residual("Choi matrix is not Hermitian", herm), herm);
  const double tr = std::abs(m_.trace() - 1.0);
  if (tr > tol::kTracePreserving)
    throw Error(ErrorKind::NotCptp, format_residual("Choi matrix does not have unit trace", tr), tr);
  const double pt = (trace_second(m_) - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (pt > tol::kTracePreserving)
    throw Error(ErrorKind::NotCptp,
                format_residual("Choi partial trace is not 1/2; map is not trace preserving", pt), pt);
}

// --- KrausSet ---------------------------------------------------------------

KrausSet::KrausSet(std::vector<Matrix2c> operators) : ops_(std::move(operators)) {
  if (ops_.empty() || ops_.size() > 4)
    throw Error(ErrorKind::InvalidArgument, "Kraus set must hold between 1 and 4 operators");
  Matrix2c sum = Matrix2c::Zero();
  for (const auto& k : ops_) sum += k.adjoint() * k;
  const double dev = (sum - Matrix2c::Identity()).norm();
  if (dev > tol::kTracePreserving)
    throw Error(ErrorKind::NotCptp,
                format_residual("Kraus operators are not trace preserving: |sum K^dag K - 1|", dev), dev);
}

// --- superoperator helpers -------------------------------------------------

Matrix2c apply_operator(const Matrix4& superop, const Matrix2c& x) {
  Matrix2c out = Matrix2c::Zero();
  for (int b = 0; b < 4; ++b) {
    const Complex xb = 0.5 * (sigma(b) * x).trace();
    if (xb == Complex(0.0)) continue;
    for (int a = 0; a < 4; ++a) out += xb * superop(a, b) * sigma(a);
  }
  return out;
}

Matrix4 superop_from_map(const std::function<Matrix2c(const Matrix2c&)>& map) {
  Matrix4 m;
  for (int b = 0; b < 4; ++b) {
    const Matrix2c image = map(sigma(b));
    for (int a = 0; a < 4; ++a) m(a, b) = 0.5 * (sigma(a) * image).trace().real();
  }
  return m;
}

Matrix4c choi_of(const Matrix4& superop) {
  Matrix4c c = Matrix4c::Zero();
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      Matrix2c unit = Matrix2c::Zero();
      unit(j, k) = 1.0;
      c.block<2, 2>(2 * j, 2 * k) = 0.5 * apply_operator(superop, unit);
    }
  }
  return c;
}

double min_hermitian_eigenvalue(const Matrix4c& m) {
  const Matrix4c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double choi_min_eigenvalue(const Matrix4& superop) { return min_hermitian_eigenvalue(choi_of(superop)); }

// --- conversions ------------------------------------------------------------

PauliTransferMatrix ptm_from_kraus(const KrausSet& kraus) {
  Matrix4 m;
  for (int b = 0; b < 4; ++b) {
    Matrix2c image = Matrix2c::Zero();
    for (const auto& k : kraus.operators()) image += k * sigma(b) * k.adjoint();
    for (int a = 0; a < 4; ++a) m(a, b) = 0.5 * (sigma(a) * image).trace().real();
  }
  // Exact first row; the Kraus invariant already bounds the deviation.
  m.row(0) << 1, 0, 0, 0;
  return PauliTransferMatrix(m);
}

ChoiMatrix choi_from_ptm(const PauliTransferMatrix& ptm) { return ChoiMatrix(choi_of(ptm.matrix())); }

PauliTransferMatrix ptm_from_choi(const ChoiMatrix& choi) {
  // E(X) = 2 Tr_1[(X^T (x) 1) C]
  const Matrix4c& c = choi.matrix();
  Matrix4 m;
  for (int b = 0; b < 4; ++b) {
    Matrix4c lifted = Matrix4c::Zero();
    const Matrix2c xt = sigma(b).transpose();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) lifted.block<2, 2>(2 * i, 2 * j) = xt(i, j) * Matrix2c::Identity();
    const Matrix2c image = 2.0 * trace_first(lifted * c);
    for (int a = 0; a < 4; ++a) m(a, b) = 0.5 * (sigma(a) * image).trace().real();
  }
  return PauliTransferMatrix(m);
}

// --- predicates -------------------------------------------------------------

CptpCheck is_cptp(const PauliTransferMatrix& ptm) {
  CptpCheck check;
  check.trace_deviation = (ptm.matrix().row(0) - Eigen::RowVector4d(1, 0, 0, 0)).cwiseAbs().maxCoeff();
  check.min_choi_eigenvalue = choi_min_eigenvalue(ptm.matrix());
  check.ok = check.min_choi_eigenvalue >= -tol::kPsd && check.trace_deviation <= tol::kTracePreserving;
  return check;
}

int kraus_rank(const PauliTransferMatrix& ptm) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(choi_of(ptm.matrix()), Eigen::EigenvaluesOnly);
  const Vector4 ev = es.eigenvalues();
  if (ev.minCoeff() < -tol::kPsd)
    throw Error(ErrorKind::NotCptp, "Kraus rank is undefined for a map that is not completely positive",
                ev.minCoeff());
  return static_cast<int>((ev.array() > tol::kRank).count());
}

PauliTransferMatrix compose(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  return PauliTransferMatrix(a.matrix() * b.matrix());
}

double determinant(const PauliTransferMatrix& ptm) { return ptm.matrix().determinant(); }

bool is_unital(const PauliTransferMatrix& ptm) {
  return ptm.matrix().block<3, 1>(1, 0).norm() <= tol::kTracePreserving;
}

Vector3 apply(const PauliTransferMatrix& ptm, const Vector3& bloch) {
  const BlochAffine affine = ptm.bloch();
  return affine.delta * bloch + affine.t;
}

PauliTransferMatrix rotation_channel(const Matrix3& rotation) {
  Matrix4 m = Matrix4::Identity();
  m.block<3, 3>(1, 1) = rotation;
  return PauliTransferMatrix(m);
}

}  // namespace qdiv
