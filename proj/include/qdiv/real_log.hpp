#pragma once

// Real Jordan forms, real logarithm branches and Lindblad-generator checks for
// 4x4 channel matrices.

#include <vector>

#include "qdiv/channel.hpp"

namespace qdiv {

struct JordanBlock {
  int start = 0;
  int size = 1;    // 1 for a real eigenvalue, 2 for a conjugate pair
  double a = 0.0;  // real part
  double b = 0.0;  // imaginary part, > 0 for pairs
};

// m = w * j * w^-1 with j block diagonal: 1x1 real blocks, then 2x2 blocks
// [[a, -b], [b, a]]. Real eigenvalues come first in descending order.
struct RealJordanForm {
  Matrix4 w;
  Matrix4 j;
  std::vector<JordanBlock> blocks;
};

// Throws Error(Defective) with the eigenvector condition number as witness.
RealJordanForm real_jordan_form(const Matrix4& m);

enum class LogExistence { PositiveSpectrum, NegativeDegenerate, ComplexPair, NoRealLog, Singular };
const char* to_string(LogExistence e);

LogExistence log_branch_existence(const Matrix4& m);
LogExistence log_branch_existence(const PauliTransferMatrix& ptm);

enum class GeneratorSource { PrincipalPositive, DegenerateNegative, ComplexPair };
const char* to_string(GeneratorSource s);

struct RealGenerator {
  Matrix4 entries;
  int branch_k = 0;
  GeneratorSource source = GeneratorSource::PrincipalPositive;
};

// Principal branch first, then k = 1, -1, 2, -2, ... up to |k| = k_max on the
// 2x2 blocks. Degenerate negative eigenvalues are paired into blocks
// [[log l, (2k+1) pi], [-(2k+1) pi, log l]]; complex pairs get the angle
// shifted by 2 pi k. Throws Error(NoRealLog), Error(Singular) or
// Error(Defective).
std::vector<RealGenerator> real_log_branches(const PauliTransferMatrix& ptm, int k_max = 3);
std::vector<RealGenerator> real_log_branches(const Matrix4& m, int k_max = 3);

struct CcpCheck {
  bool ok = false;
  double min_eigenvalue = 0.0;

  explicit operator bool() const noexcept { return ok; }
};

// (1 - omega)(id (x) L)[omega](1 - omega) >= 0. The tolerance scales with the
// generator norm so that large logarithms near the boundary are not misjudged.
CcpCheck is_ccp(const Matrix4& gen);
CcpCheck is_ccp(const RealGenerator& gen);

bool is_trace_annihilating(const Matrix4& gen);
bool is_lindblad(const Matrix4& gen);
bool is_lindblad(const RealGenerator& gen);

Matrix4 expm(const Matrix4& m);
// exp(t L) as a channel; t < 0 throws Error(InvalidArgument).
PauliTransferMatrix exp_generator(const Matrix4& gen, double t);
PauliTransferMatrix exp_generator(const RealGenerator& gen, double t);

}  // namespace qdiv
