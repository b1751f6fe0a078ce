#include "qdiv/real_log.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "qdiv/error.hpp"
#include "qdiv/tolerances.hpp"

namespace qdiv {

namespace {

struct EigenCluster {
  Complex mu;
  int size;
};

double rel_scale(Complex z) { return std::max(1.0, std::abs(z)); }

std::vector<EigenCluster> spectrum_clusters(const Matrix4& m) {
  Eigen::EigenSolver<Matrix4> es(m, false);
  const Eigen::Vector4cd ev = es.eigenvalues();
  std::vector<EigenCluster> out;
  std::vector<bool> used(4, false);
  for (int i = 0; i < 4; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    Complex sum = ev(i);
    int n = 1;
    used[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < 4; ++j) {
      if (!used[static_cast<std::size_t>(j)] && std::abs(ev(i) - ev(j)) <= tol::kDegenerate * rel_scale(ev(i))) {
        sum += ev(j);
        ++n;
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    out.push_back({sum / static_cast<double>(n), n});
  }
  return out;
}

bool is_real(Complex z) { return std::abs(z.imag()) <= tol::kDegenerate * rel_scale(z); }

Matrix4 pair_block(double a, double b) {
  Matrix4 j = Matrix4::Zero();
  j(0, 0) = a;
  j(0, 1) = -b;
  j(1, 0) = b;
  j(1, 1) = a;
  return j;
}

}  // namespace

RealJordanForm real_jordan_form(const Matrix4& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<EigenCluster> clusters = spectrum_clusters(m);

  std::vector<EigenCluster> reals;
  std::vector<EigenCluster> pairs;
  for (const auto& c : clusters) {
    if (is_real(c.mu)) {
      reals.push_back({Complex(c.mu.real(), 0.0), c.size});
    } else if (c.mu.imag() > 0) {
      pairs.push_back(c);
    }
  }
  std::sort(reals.begin(), reals.end(), [](const auto& x, const auto& y) { return x.mu.real() > y.mu.real(); });

  RealJordanForm f;
  f.w.setZero();
  f.j.setZero();
  int col = 0;
  for (const auto& c : reals) {
    const double mu = c.mu.real();
    Eigen::JacobiSVD<Matrix4> svd(m - mu * Matrix4::Identity(), Eigen::ComputeFullV);
    const double residual = svd.singularValues()(4 - c.size);
    if (residual > 1e-6 * scale)
      throw Error(ErrorKind::Defective, "defective matrix: repeated eigenvalue without a full eigenspace", residual);
    for (int k = 0; k < c.size; ++k) {
      Vector4 v = svd.matrixV().col(4 - c.size + k);
      Eigen::Index top = 0;
      v.cwiseAbs().maxCoeff(&top);
      if (v(top) < 0) v = -v;
      f.w.col(col) = v;
      f.j(col, col) = mu;
      f.blocks.push_back({col, 1, mu, 0.0});
      ++col;
    }
  }
  for (const auto& c : pairs) {
    Eigen::Matrix4cd shifted = m.cast<Complex>() - c.mu * Eigen::Matrix4cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(shifted, Eigen::ComputeFullV);
    const double residual = svd.singularValues()(4 - c.size);
    if (residual > 1e-6 * scale)
      throw Error(ErrorKind::Defective, "defective matrix: repeated eigenvalue without a full eigenspace", residual);
    for (int k = 0; k < c.size; ++k) {
      const Eigen::Vector4cd v = svd.matrixV().col(4 - c.size + k);
      f.w.col(col) = v.real();
      f.w.col(col + 1) = -v.imag();
      f.j.block<2, 2>(col, col) = pair_block(c.mu.real(), c.mu.imag()).topLeftCorner<2, 2>();
      f.blocks.push_back({col, 2, c.mu.real(), c.mu.imag()});
      col += 2;
    }
  }
  if (col != 4) throw Error(ErrorKind::Defective, "defective matrix: eigenvalue clustering failed");

  Eigen::JacobiSVD<Matrix4> wsvd(f.w);
  const double smin = wsvd.singularValues()(3);
  const double cond = smin > 0 ? wsvd.singularValues()(0) / smin : INFINITY;
  if (!(cond <= tol::kMaxEigenvectorCondition))
    throw Error(ErrorKind::Defective, "defective matrix: eigenvector matrix is ill-conditioned", cond);
  const double recon = (f.w * f.j * f.w.inverse() - m).cwiseAbs().maxCoeff();
  if (recon > tol::kExpRoundTrip * scale)
    throw Error(ErrorKind::Defective, "defective matrix: Jordan reconstruction failed", cond);
  return f;
}

const char* to_string(LogExistence e) {
  switch (e) {
    case LogExistence::PositiveSpectrum: return "PositiveSpectrum";
    case LogExistence::NegativeDegenerate: return "NegativeDegenerate";
    case LogExistence::ComplexPair: return "ComplexPair";
    case LogExistence::NoRealLog: return "NoRealLog";
    case LogExistence::Singular: return "Singular";
  }
  return "?";
}

const char* to_string(GeneratorSource s) {
  switch (s) {
    case GeneratorSource::PrincipalPositive: return "PrincipalPositive";
    case GeneratorSource::DegenerateNegative: return "DegenerateNegative";
    case GeneratorSource::ComplexPair: return "ComplexPair";
  }
  return "?";
}

LogExistence log_branch_existence(const Matrix4& m) {
  const std::vector<EigenCluster> clusters = spectrum_clusters(m);
  for (const auto& c : clusters)
    if (std::abs(c.mu) < tol::kRank) return LogExistence::Singular;
  bool negative = false;
  bool complex = false;
  for (const auto& c : clusters) {
    if (!is_real(c.mu)) {
      complex = true;
    } else if (c.mu.real() < 0) {
      if (c.size % 2 != 0) return LogExistence::NoRealLog;
      negative = true;
    }
  }
  if (negative) return LogExistence::NegativeDegenerate;
  if (complex) return LogExistence::ComplexPair;
  return LogExistence::PositiveSpectrum;
}

LogExistence log_branch_existence(const PauliTransferMatrix& ptm) { return log_branch_existence(ptm.matrix()); }

std::vector<RealGenerator> real_log_branches(const Matrix4& m, int k_max) {
  const LogExistence existence = log_branch_existence(m);
  if (existence == LogExistence::Singular)
    throw Error(ErrorKind::Singular, "singular channel: the logarithm does not exist");
  if (existence == LogExistence::NoRealLog)
    throw Error(ErrorKind::NoRealLog,
                "no real logarithm: a negative eigenvalue has odd multiplicity");
  if (k_max < 0) throw Error(ErrorKind::InvalidArgument, "k_max must be non-negative");

  const RealJordanForm f = real_jordan_form(m);
  const Matrix4 w_inv = f.w.inverse();

  // Negative real eigenvalues are adjacent after sorting; pair them up.
  struct LogBlock {
    int start;
    int size;
    double log_modulus;
    double angle;  // principal rotation angle for 2x2 blocks
    bool negative_pair;
  };
  std::vector<LogBlock> plan;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    const JordanBlock& b = f.blocks[i];
    if (b.size == 2) {
      plan.push_back({b.start, 2, 0.5 * std::log(b.a * b.a + b.b * b.b), std::atan2(b.b, b.a), false});
    } else if (b.a > 0) {
      plan.push_back({b.start, 1, std::log(b.a), 0.0, false});
    } else {
      const JordanBlock& partner = f.blocks.at(i + 1);
      plan.push_back({b.start, 2, std::log(-0.5 * (b.a + partner.a)), std::numbers::pi, true});
      ++i;
    }
  }
  const bool has_pairs = std::any_of(plan.begin(), plan.end(), [](const LogBlock& b) { return b.size == 2; });
  const bool has_negative = std::any_of(plan.begin(), plan.end(), [](const LogBlock& b) { return b.negative_pair; });

  std::vector<int> ks{0};
  if (has_pairs) {
    for (int k = 1; k <= k_max; ++k) {
      ks.push_back(k);
      ks.push_back(-k);
    }
  }

  std::vector<RealGenerator> out;
  for (int k : ks) {
    Matrix4 log_j = Matrix4::Zero();
    for (const LogBlock& b : plan) {
      if (b.size == 1) {
        log_j(b.start, b.start) = b.log_modulus;
        continue;
      }
      log_j(b.start, b.start) = log_j(b.start + 1, b.start + 1) = b.log_modulus;
      if (b.negative_pair) {
        const double theta = (2 * k + 1) * std::numbers::pi;
        log_j(b.start, b.start + 1) = theta;
        log_j(b.start + 1, b.start) = -theta;
      } else {
        const double theta = b.angle + 2.0 * std::numbers::pi * k;
        log_j(b.start, b.start + 1) = -theta;
        log_j(b.start + 1, b.start) = theta;
      }
    }
    RealGenerator g;
    g.entries = f.w * log_j * w_inv;
    g.branch_k = k;
    g.source = has_negative ? GeneratorSource::DegenerateNegative
                            : (has_pairs ? GeneratorSource::ComplexPair : GeneratorSource::PrincipalPositive);
    out.push_back(g);
  }
  return out;
}

std::vector<RealGenerator> real_log_branches(const PauliTransferMatrix& ptm, int k_max) {
  return real_log_branches(ptm.matrix(), k_max);
}

CcpCheck is_ccp(const Matrix4& gen) {
  const Matrix4c proj = Matrix4c::Identity() - maximally_entangled_projector();
  const Matrix4c m = proj * choi_of(gen) * proj;
  CcpCheck c;
  c.min_eigenvalue = min_hermitian_eigenvalue(m);
  c.ok = c.min_eigenvalue >= -tol::kPsd * std::max(1.0, gen.cwiseAbs().maxCoeff());
  return c;
}

CcpCheck is_ccp(const RealGenerator& gen) { return is_ccp(gen.entries); }

bool is_trace_annihilating(const Matrix4& gen) {
  return gen.row(0).cwiseAbs().maxCoeff() <= tol::kTracePreserving * std::max(1.0, gen.cwiseAbs().maxCoeff());
}

bool is_lindblad(const Matrix4& gen) { return gen.allFinite() && is_trace_annihilating(gen) && is_ccp(gen).ok; }

bool is_lindblad(const RealGenerator& gen) { return is_lindblad(gen.entries); }

Matrix4 expm(const Matrix4& m) { return m.exp(); }

PauliTransferMatrix exp_generator(const Matrix4& gen, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "exp_generator requires t >= 0", t);
  if (!is_trace_annihilating(gen)) return PauliTransferMatrix(expm(t * gen));
  // With first row zero, exp(tL) = [[1, 0], [phi, exp(tM)]]; exponentiating
  // only the lower block keeps the first row exactly (1, 0, 0, 0) instead of
  // letting squaring round the fixed eigenvalue 1.
  Matrix4 shifted = Matrix4::Zero();
  shifted.topLeftCorner<3, 3>() = t * gen.bottomRightCorner<3, 3>();
  shifted.topRightCorner<3, 1>() = t * gen.bottomLeftCorner<3, 1>();
  const Matrix4 block = shifted.exp();
  Matrix4 e = Matrix4::Zero();
  e(0, 0) = 1.0;
  e.bottomRightCorner<3, 3>() = block.topLeftCorner<3, 3>();
  e.bottomLeftCorner<3, 1>() = block.topRightCorner<3, 1>();
  return PauliTransferMatrix(e);
}

PauliTransferMatrix exp_generator(const RealGenerator& gen, double t) { return exp_generator(gen.entries, t); }

}  // namespace qdiv
