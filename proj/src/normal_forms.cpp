#include "qdiv/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qdiv/error.hpp"
#include "qdiv/tolerances.hpp"

namespace qdiv {

// --- special orthogonal normal form ------------------------------------------

PauliTransferMatrix SpecialOrthogonalNormalForm::diagonal_channel() const {
  return PauliTransferMatrix::from_bloch({lambdas.asDiagonal().toDenseMatrix(), tau});
}

SpecialOrthogonalNormalForm special_orthogonal_normal_form(const PauliTransferMatrix& ptm) {
  const BlochAffine affine = ptm.bloch();
  Eigen::JacobiSVD<Matrix3> svd(affine.delta, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3 u = svd.matrixU();
  Matrix3 v = svd.matrixV();
  Vector3 s = svd.singularValues();
  // Reflections are not unitary conjugations; move them into the smallest semi-axis.
  if (u.determinant() < 0) {
    u.col(2) *= -1.0;
    s(2) *= -1.0;
  }
  if (v.determinant() < 0) {
    v.col(2) *= -1.0;
    s(2) *= -1.0;
  }
  SpecialOrthogonalNormalForm nf;
  nf.r1 = u;
  nf.lambdas = s;
  nf.r2 = v.transpose();
  nf.tau = u.transpose() * affine.t;
  return nf;
}

// --- Lorentz normal form -------------------------------------------------------

namespace {

const Matrix4& eta() {
  static const Matrix4 m = Vector4(1, -1, -1, -1).asDiagonal().toDenseMatrix();
  return m;
}

const Matrix4& transpose_sign() {
  static const Matrix4 m = Vector4(1, 1, -1, 1).asDiagonal().toDenseMatrix();
  return m;
}

double minkowski(const Vector4& x, const Vector4& y) { return x.dot(eta() * y); }

struct EtaVector {
  Vector4 v;  // normalized so that |v^T eta v| = 1
  int signature;  // +1 timelike, -1 spacelike
};

// eta-orthonormal basis of the column span of w.
std::vector<EtaVector> eta_orthonormalize(const Eigen::MatrixXd& w) {
  const Eigen::MatrixXd gram = w.transpose() * eta() * w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::MatrixXd basis = w * es.eigenvectors();
  std::vector<EtaVector> out;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const double g = es.eigenvalues()(k);
    if (std::abs(g) < tol::kLorentz)
      throw Error(ErrorKind::LorentzUnavailable, "null direction in Lorentz eigenspace", g);
    out.push_back({basis.col(k) / std::sqrt(std::abs(g)), g > 0 ? 1 : -1});
  }
  return out;
}

// Orthonormal basis of the (approximate) null space of m, of dimension dim.
Eigen::MatrixXd null_space(const Matrix4& m, int dim) {
  Eigen::JacobiSVD<Matrix4> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

Matrix4 boost03(double rapidity) {
  Matrix4 b = Matrix4::Identity();
  b(0, 0) = b(3, 3) = std::cosh(rapidity);
  b(0, 3) = b(3, 0) = std::sinh(rapidity);
  return b;
}

struct Cluster {
  double mu;
  std::vector<int> members;
};

std::vector<Cluster> cluster_eigenvalues(const Eigen::Vector4cd& ev) {
  std::vector<Cluster> clusters;
  std::vector<bool> used(4, false);
  for (int i = 0; i < 4; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    Cluster c{0.0, {i}};
    used[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < 4; ++j) {
      if (!used[static_cast<std::size_t>(j)] &&
          std::abs(ev(i) - ev(j)) <= tol::kLorentz * std::max(1.0, std::abs(ev(i)))) {
        c.members.push_back(j);
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    Complex mean = 0.0;
    for (int m : c.members) mean += ev(m);
    mean /= static_cast<double>(c.members.size());
    if (std::abs(mean.imag()) > tol::kLorentz * std::max(1.0, std::abs(mean)))
      throw Error(ErrorKind::LorentzUnavailable, "complex spectrum in Lorentz eigenproblem", mean.imag());
    c.mu = mean.real();
    clusters.push_back(std::move(c));
  }
  return clusters;
}

// Brings the (0,3) block of sigma to the balanced light-cone form where both
// diagonal light-cone entries are equal and the surviving off-diagonal entry
// has the same magnitude.
void normalize_defective_block(LorentzDecomposition& d) {
  const double uu = 0.5 * (d.sigma(0, 0) + d.sigma(0, 3) + d.sigma(3, 0) + d.sigma(3, 3));
  const double uv = 0.5 * (d.sigma(0, 0) - d.sigma(0, 3) + d.sigma(3, 0) - d.sigma(3, 3));
  const double vu = 0.5 * (d.sigma(0, 0) + d.sigma(0, 3) - d.sigma(3, 0) - d.sigma(3, 3));
  const double vv = 0.5 * (d.sigma(0, 0) - d.sigma(0, 3) - d.sigma(3, 0) + d.sigma(3, 3));
  if (uu * vv <= 0.0) return;
  const double sum = 0.5 * std::log(uu / vv);
  const double scale = std::sqrt(uu * vv);
  const double shear = std::abs(vu) < std::abs(uv) ? std::log(std::abs(uv) / scale)
                                                   : std::log(scale / std::abs(vu));
  const double r1 = 0.5 * (sum + shear);
  const double r2 = 0.5 * (sum - shear);
  // L -> L B(r), sigma -> B(r1)^-1 sigma B(r2)^-T; B(r)^-1 = B(-r).
  d.l1 = d.l1 * boost03(r1);
  d.l2 = d.l2 * boost03(r2);
  d.sigma = boost03(-r1) * d.sigma * boost03(-r2);
}

void extract_pattern(LorentzDecomposition& d) {
  const double uv = 0.5 * (d.sigma(0, 0) - d.sigma(0, 3) + d.sigma(3, 0) - d.sigma(3, 3));
  const double vu = 0.5 * (d.sigma(0, 0) + d.sigma(0, 3) - d.sigma(3, 0) - d.sigma(3, 3));
  RankDeficientPattern p;
  p.a = d.sigma(0, 0);
  p.d = d.sigma(1, 1);
  // The pattern has a vanishing uv light-cone entry; otherwise conjugate by G.
  if (std::abs(uv) <= std::abs(vu)) {
    p.b = d.sigma(0, 3);
    p.c = d.sigma(3, 0);
  } else {
    p.b = -d.sigma(0, 3);
    p.c = -d.sigma(3, 0);
    p.gauge_applied = true;
  }
  d.b_offdiag = p.b;
  d.pattern = p;
}

}  // namespace

Vector3 LorentzDecomposition::channel_values() const {
  return Vector3(s(1), s(2), -s(3)) / s(0);
}

Matrix4 correlation_matrix(const PauliTransferMatrix& ptm) { return ptm.matrix() * transpose_sign(); }

double lorentz_residual(const Matrix4& l) { return (l.transpose() * eta() * l - eta()).cwiseAbs().maxCoeff(); }

double reconstruction_residual(const LorentzDecomposition& d, const PauliTransferMatrix& ptm) {
  return (d.l1 * d.sigma * d.l2.transpose() - correlation_matrix(ptm)).cwiseAbs().maxCoeff();
}

LorentzDecomposition lorentz_normal_form(const PauliTransferMatrix& ptm) {
  const Matrix4 r = correlation_matrix(ptm);
  {
    Eigen::JacobiSVD<Matrix4> svd(r);
    const double smin = svd.singularValues()(3);
    if (smin < tol::kRank)
      throw Error(ErrorKind::LorentzUnavailable, "degenerate; Lorentz normal form unavailable (singular R)",
                  smin);
  }

  // R eta R^T eta = L1 sigma^2 L1^-1 in the diagonal case.
  const Matrix4 a = r * eta() * r.transpose() * eta();
  Eigen::EigenSolver<Matrix4> es(a, false);
  const std::vector<Cluster> clusters = cluster_eigenvalues(es.eigenvalues());

  std::optional<EtaVector> timelike;
  std::vector<std::pair<double, Vector4>> spacelike;
  std::optional<std::pair<Vector4, Vector4>> defect;  // (timelike, spacelike) pair

  for (const Cluster& c : clusters) {
    const int m = static_cast<int>(c.members.size());
    Matrix4 shifted = a - c.mu * Matrix4::Identity();
    Matrix4 power = shifted;
    for (int k = 1; k < m; ++k) power = power * shifted;
    const Eigen::MatrixXd w = null_space(power, m);
    const std::vector<EtaVector> basis = eta_orthonormalize(w);
    const bool is_defective =
        m > 1 && (shifted * w).cwiseAbs().maxCoeff() > 10.0 * tol::kLorentz * std::max(1.0, std::abs(c.mu));
    if (is_defective) {
      if (m != 2 || defect || basis[0].signature == basis[1].signature)
        throw Error(ErrorKind::LorentzUnavailable, "unsupported defective Lorentz structure");
      const EtaVector& t = basis[0].signature > 0 ? basis[0] : basis[1];
      const EtaVector& sp = basis[0].signature > 0 ? basis[1] : basis[0];
      defect = std::make_pair(t.v, sp.v);
      continue;
    }
    for (const EtaVector& e : basis) {
      if (e.signature > 0) {
        if (timelike) throw Error(ErrorKind::LorentzUnavailable, "more than one timelike direction");
        timelike = e;
      } else {
        spacelike.emplace_back(c.mu, e.v);
      }
    }
  }
  std::stable_sort(spacelike.begin(), spacelike.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  LorentzDecomposition d;
  if (defect) {
    if (timelike || spacelike.size() != 2)
      throw Error(ErrorKind::LorentzUnavailable, "unsupported defective Lorentz structure");
    d.l1.col(0) = defect->first;
    d.l1.col(1) = spacelike[0].second;
    d.l1.col(2) = spacelike[1].second;
    d.l1.col(3) = defect->second;
  } else {
    if (!timelike || spacelike.size() != 3)
      throw Error(ErrorKind::LorentzUnavailable, "Lorentz eigenproblem lacks a timelike direction");
    d.l1.col(0) = timelike->v;
    for (int k = 0; k < 3; ++k) d.l1.col(k + 1) = spacelike[static_cast<std::size_t>(k)].second;
  }
  if (d.l1(0, 0) < 0) d.l1.col(0) *= -1.0;
  if (d.l1.determinant() < 0) d.l1.col(3) *= -1.0;

  // X = L1^-1 R = sigma L2^T.
  const Matrix4 x = eta() * d.l1.transpose() * eta() * r;
  Matrix4 l2t;
  auto unit_row = [](const Vector4& v) { return Vector4(v / std::sqrt(std::abs(minkowski(v, v)))); };
  l2t.row(1) = unit_row(x.row(1).transpose()).transpose();
  l2t.row(2) = unit_row(x.row(2).transpose()).transpose();

  if (!defect) {
    Vector4 r0 = unit_row(x.row(0).transpose());
    if (r0(0) < 0) r0 *= -1.0;
    l2t.row(0) = r0.transpose();
    // Last row as the eta-orthogonal completion; it carries the smallest |s|.
    Eigen::Matrix<double, 3, 4> constraints = l2t.topRows<3>() * eta();
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(constraints, Eigen::ComputeFullV);
    Vector4 r3 = unit_row(svd.matrixV().col(3));
    if (-minkowski(x.row(3).transpose(), r3) < 0) r3 *= -1.0;
    l2t.row(3) = r3.transpose();
    if (l2t.determinant() < 0) l2t.row(3) *= -1.0;
  } else {
    Eigen::Matrix<double, 4, 2> span;
    span.col(0) = x.row(0).transpose();
    span.col(1) = x.row(3).transpose();
    const std::vector<EtaVector> basis = eta_orthonormalize(span);
    if (basis[0].signature == basis[1].signature)
      throw Error(ErrorKind::LorentzUnavailable, "defective block has wrong signature");
    Vector4 r0 = basis[0].signature > 0 ? basis[0].v : basis[1].v;
    const Vector4 r3 = basis[0].signature > 0 ? basis[1].v : basis[0].v;
    if (r0(0) < 0) r0 *= -1.0;
    l2t.row(0) = r0.transpose();
    l2t.row(3) = r3.transpose();
    const Matrix4 trial = x * eta() * l2t.transpose() * eta();
    if (trial(0, 0) * trial(3, 3) - trial(0, 3) * trial(3, 0) < 0) l2t.row(3) *= -1.0;
    if (l2t.determinant() < 0) l2t.row(2) *= -1.0;
  }
  d.l2 = l2t.transpose();
  // sigma = X (L2^T)^-1 = X eta L2 eta.
  d.sigma = x * eta() * d.l2 * eta();

  if (defect) {
    normalize_defective_block(d);
    d.diagonal = false;
    extract_pattern(d);
  } else {
    Matrix4 off = d.sigma;
    off.diagonal().setZero();
    d.diagonal = off.cwiseAbs().maxCoeff() < tol::kLorentz * std::max(1.0, std::abs(d.sigma(0, 0)));
  }
  d.s = d.sigma.diagonal();
  return d;
}

// --- Pauli regions -------------------------------------------------------------

bool pauli_cp_region(const Vector3& l) {
  const double e = tol::kRegion;
  return 1 + l(0) - l(1) - l(2) >= -e && 1 - l(0) + l(1) - l(2) >= -e && 1 - l(0) - l(1) + l(2) >= -e &&
         1 + l(0) + l(1) + l(2) >= -e;
}

bool pauli_eb_region(const Vector3& l) {
  const double e = tol::kRegion;
  return pauli_cp_region(l) && l.sum() <= 1 + e && l(0) - l(1) - l(2) <= 1 + e && l(1) - l(0) - l(2) <= 1 + e &&
         l(2) - l(0) - l(1) <= 1 + e;
}

}  // namespace qdiv
