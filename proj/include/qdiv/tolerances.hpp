#pragma once

// Numerical thresholds shared by every module. All channel matrices are 4x4
// with entries in [-1, 1], so absolute thresholds are used unless noted.

namespace qdiv::tol {

inline constexpr double kTracePreserving = 1e-9;
inline constexpr double kHermitian = 1e-9;
inline constexpr double kPsd = 1e-9;
inline constexpr double kRank = 1e-7;
inline constexpr double kRoundTrip = 1e-10;

// Lorentz decomposition: eigenvalue clustering and the "diagonal" flag.
inline constexpr double kLorentz = 1e-7;

// P-divisibility sign test; det == 0 counts as P-divisible.
inline constexpr double kDeterminant = 1e-10;

// exp(log E) must reproduce E to this max-entry error.
inline constexpr double kExpRoundTrip = 1e-9;

// Relative distance under which eigenvalues are treated as degenerate.
inline constexpr double kDegenerate = 1e-7;

// Eigenvector matrices with a larger condition number are rejected as defective.
inline constexpr double kMaxEigenvectorCondition = 1e8;

// Off-diagonal mass below which a PTM is treated as exactly a Pauli channel.
inline constexpr double kExactPauli = 1e-12;

// Pattern match against the singular Pauli closure families diag(1,l,0,0), N, ...
inline constexpr double kClosurePattern = 1e-9;

// Analytic region inequalities (tetrahedron, octahedron, Eqs. for CP and L).
inline constexpr double kRegion = 1e-9;

// Largest Fock population allowed at the truncation edge.
inline constexpr double kTruncation = 1e-10;

}  // namespace qdiv::tol
