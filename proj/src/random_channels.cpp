#include "qdiv/random_channels.hpp"

#include "qdiv/error.hpp"

namespace qdiv {

PauliTransferMatrix random_channel(Rng& rng, int rank) {
  if (rank < 1 || rank > 4) throw Error(ErrorKind::InvalidArgument, "Kraus rank must be between 1 and 4", rank);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix4c c = g * g.adjoint();
  c /= c.trace().real();

  Matrix2c rho;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rho(i, j) = c(2 * i, 2 * j) + c(2 * i + 1, 2 * j + 1);
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(2.0 * rho);
  const Matrix2c s = es.operatorInverseSqrt();
  Matrix4c lift = Matrix4c::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) lift.block<2, 2>(2 * i, 2 * j) = s(i, j) * Matrix2c::Identity();
  c = lift * c * lift.adjoint();
  c = 0.5 * (c + c.adjoint()).eval();
  return ptm_from_choi(ChoiMatrix(c));
}

Matrix3 random_rotation(Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix3> qr(a);
  Matrix3 q = qr.householderQ();
  const Matrix3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 3; ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Vector3 random_tetrahedron_point(Rng& rng) {
  static const std::array<Vector3, 4> corners{Vector3(1, 1, 1), Vector3(1, -1, -1), Vector3(-1, 1, -1),
                                              Vector3(-1, -1, 1)};
  std::exponential_distribution<double> expo;
  std::array<double, 4> w{};
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  Vector3 p = Vector3::Zero();
  for (std::size_t k = 0; k < 4; ++k) p += (w[k] / total) * corners[k];
  return p;
}

PauliTransferMatrix random_unital_channel(Rng& rng) {
  const Matrix3 r1 = random_rotation(rng);
  const Matrix3 r2 = random_rotation(rng);
  return compose(rotation_channel(r1),
                 compose(PauliTransferMatrix::pauli(random_tetrahedron_point(rng)), rotation_channel(r2)));
}

Matrix4 random_tp_matrix(Rng& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.0;
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = uni(rng);
  return m;
}

}  // namespace qdiv
