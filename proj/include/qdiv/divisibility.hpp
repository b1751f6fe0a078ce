#pragma once

// Membership tests for the divisibility classes of qubit channels and the
// entanglement-breaking property.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdiv/channel.hpp"
#include "qdiv/real_log.hpp"

namespace qdiv {

enum class Tri { No = 0, Yes = 1, Unknown = -1 };

const char* to_string(Tri t);
inline int to_int(Tri t) { return static_cast<int>(t); }

struct DivisibilityVerdict {
  Tri divisible = Tri::Unknown;
  bool p_divisible = false;
  Tri cp_divisible = Tri::Unknown;
  Tri l_divisible = Tri::Unknown;
  bool entanglement_breaking = false;
  double delta = 0.0;
  int chi = 0;
  // Set when an Unknown kept delta below a level the channel may reach.
  bool caveat = false;
  std::vector<std::string> notes;
  std::map<std::string, double> witnesses;
};

// All tests below require a CPTP channel and throw Error(NotCptp) otherwise.
Tri classify_divisible(const PauliTransferMatrix& ptm);
bool is_p_divisible(const PauliTransferMatrix& ptm);
Tri is_cp_divisible(const PauliTransferMatrix& ptm);

struct LDivisibility {
  Tri verdict = Tri::Unknown;
  std::optional<RealGenerator> generator;
  // Only logarithms with the trivial degenerate-eigenspace gauge were tried.
  bool principal_branch_only = false;
  std::string route;
};

LDivisibility is_l_divisible(const PauliTransferMatrix& ptm, int k_max = 3);

double ppt_min_eigenvalue(const PauliTransferMatrix& ptm);
bool is_entanglement_breaking(const PauliTransferMatrix& ptm);

double delta(const PauliTransferMatrix& ptm);
int chi(const PauliTransferMatrix& ptm);

DivisibilityVerdict classify(const PauliTransferMatrix& ptm);

// Closed-form tests for Pauli channels diag(1, l1, l2, l3).
// 0 < l1 l2 l3 <= l_min^2
bool pauli_cp_divisible_analytic(const Vector3& lambdas);
// lj lk <= ll for positive spectra, l^2 <= eta for (eta, -l, -l), closure
// families for singular ones, No for every other negative pattern.
Tri pauli_l_divisible_analytic(const Vector3& lambdas);

// Semi-axes test shared by the unital and Lorentz routes, in closure form:
// with |l| sorted as m1 <= m2 <= m3, m2 m3 <= m1.
bool cp_semi_axes_condition(const Vector3& lambdas);

// True when every off-diagonal entry vanishes (within 1e-12).
bool is_exact_pauli(const PauliTransferMatrix& ptm);

}  // namespace qdiv
