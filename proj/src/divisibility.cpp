#include "qdiv/divisibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qdiv/error.hpp"
#include "qdiv/normal_forms.hpp"
#include "qdiv/tolerances.hpp"

namespace qdiv {

namespace {

void require_cptp(const PauliTransferMatrix& ptm) {
  const CptpCheck c = is_cptp(ptm);
  if (!c.ok)
    throw Error(ErrorKind::NotCptp, "channel is not completely positive (min Choi eigenvalue " +
                                        std::to_string(c.min_choi_eigenvalue) + ")",
                c.min_choi_eigenvalue);
}

bool near(double x, double y) { return std::abs(x - y) <= tol::kClosurePattern; }

// Pauli channels in the closure of the L-divisible set with a zero eigenvalue:
// one surviving positive axis, or complete depolarization.
bool closure_family(const Vector3& l) {
  int zeros = 0;
  double other = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (near(l(i), 0.0))
      ++zeros;
    else
      other = l(i);
  }
  return zeros == 3 || (zeros == 2 && other > tol::kClosurePattern);
}

struct RotationBlockForm {
  double a, b, c;
};

// diag(1, c) plus a block [[a, -b], [b, a]] on the remaining two axes, with
// no other entries.
std::optional<RotationBlockForm> rotation_block_form(const Matrix4& m) {
  static const std::array<std::array<int, 3>, 3> layouts{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
  for (const auto& lay : layouts) {
    const int c = lay[0];
    const int i = std::min(lay[1], lay[2]);
    const int j = std::max(lay[1], lay[2]);
    Matrix4 rest = m;
    rest(0, 0) -= 1.0;
    rest(c, c) = 0.0;
    rest(i, i) = rest(j, j) = rest(i, j) = rest(j, i) = 0.0;
    if (rest.cwiseAbs().maxCoeff() > tol::kExactPauli) continue;
    if (std::abs(m(i, i) - m(j, j)) > tol::kExactPauli || std::abs(m(i, j) + m(j, i)) > tol::kExactPauli)
      continue;
    const double b = m(j, i);
    if (std::abs(b) <= tol::kExactPauli) continue;
    return RotationBlockForm{m(i, i), b, m(c, c)};
  }
  return std::nullopt;
}

RealGenerator principal_pauli_log(const Vector3& l) {
  RealGenerator g;
  g.entries = Vector4(0.0, std::log(l(0)), std::log(l(1)), std::log(l(2))).asDiagonal();
  return g;
}

}  // namespace

const char* to_string(Tri t) {
  switch (t) {
    case Tri::No: return "No";
    case Tri::Yes: return "Yes";
    case Tri::Unknown: return "Unknown";
  }
  return "?";
}

bool is_exact_pauli(const PauliTransferMatrix& ptm) {
  Matrix4 off = ptm.matrix();
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= tol::kExactPauli;
}

bool pauli_cp_divisible_analytic(const Vector3& l) {
  const double prod = l.prod();
  const double lmin = l.cwiseAbs().minCoeff();
  return prod > 0 && prod <= lmin * lmin + tol::kRegion;
}

bool cp_semi_axes_condition(const Vector3& lambdas) {
  Vector3 m = lambdas.cwiseAbs();
  std::sort(m.data(), m.data() + 3);
  return m(1) * m(2) <= m(0) + tol::kRegion;
}

Tri pauli_l_divisible_analytic(const Vector3& l) {
  const bool singular = (l.cwiseAbs().array() < tol::kRank).any();
  if (singular) return closure_family(l) ? Tri::Yes : Tri::No;
  if ((l.array() > 0).all()) {
    const bool ok = l(0) * l(1) <= l(2) + tol::kRegion && l(1) * l(2) <= l(0) + tol::kRegion &&
                    l(0) * l(2) <= l(1) + tol::kRegion;
    return ok ? Tri::Yes : Tri::No;
  }
  // (eta, -lambda, -lambda) in any order.
  for (int p = 0; p < 3; ++p) {
    const double eta = l(p);
    const double x = l((p + 1) % 3);
    const double y = l((p + 2) % 3);
    if (eta > 0 && x < 0 && std::abs(x - y) <= tol::kDegenerate * std::max(1.0, std::abs(x)))
      return x * y <= eta + tol::kRegion ? Tri::Yes : Tri::No;
  }
  return Tri::No;
}

Tri classify_divisible(const PauliTransferMatrix& ptm) {
  const int rank = kraus_rank(ptm);
  if (rank == 4 || rank == 1) return Tri::Yes;
  if (rank == 3) {
    try {
      return lorentz_normal_form(ptm).diagonal ? Tri::No : Tri::Unknown;
    } catch (const Error&) {
      return Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

bool is_p_divisible(const PauliTransferMatrix& ptm) { return determinant(ptm) >= -tol::kDeterminant; }

Tri is_cp_divisible(const PauliTransferMatrix& ptm) {
  if (!is_p_divisible(ptm)) return Tri::No;
  if (is_unital(ptm)) {
    const SpecialOrthogonalNormalForm nf = special_orthogonal_normal_form(ptm);
    return cp_semi_axes_condition(nf.lambdas) ? Tri::Yes : Tri::No;
  }
  if (kraus_rank(ptm) < 4) return Tri::Unknown;
  try {
    const LorentzDecomposition d = lorentz_normal_form(ptm);
    if (!d.diagonal) return Tri::Unknown;
    return cp_semi_axes_condition(d.channel_values()) ? Tri::Yes : Tri::No;
  } catch (const Error&) {
    return Tri::Unknown;
  }
}

LDivisibility is_l_divisible(const PauliTransferMatrix& ptm, int k_max) {
  require_cptp(ptm);
  LDivisibility r;
  const Matrix4& m = ptm.matrix();

  if (is_exact_pauli(ptm)) {
    const Vector3 l = m.diagonal().tail<3>();
    r.route = "pauli";
    r.verdict = pauli_l_divisible_analytic(l);
    if ((l.array() > 0).all() && r.verdict == Tri::Yes) r.generator = principal_pauli_log(l);
    if (r.verdict == Tri::Yes && !r.generator && !closure_family(l)) {
      const auto branches = real_log_branches(ptm, 0);
      r.generator = branches.front();
    }
    return r;
  }

  if (const auto form = rotation_block_form(m)) {
    r.route = "rotation-block";
    if (std::abs(form->c) < tol::kRank) {
      r.verdict = Tri::Unknown;
    } else if (form->c < 0) {
      r.verdict = Tri::No;
    } else {
      r.verdict = form->a * form->a + form->b * form->b <= form->c + tol::kRegion ? Tri::Yes : Tri::No;
      if (r.verdict == Tri::Yes) {
        for (const auto& g : real_log_branches(ptm, k_max)) {
          if (is_ccp(g).ok) {
            r.generator = g;
            break;
          }
        }
      }
    }
    return r;
  }

  const LogExistence existence = log_branch_existence(ptm);
  if (existence == LogExistence::Singular) {
    r.route = "singular";
    r.verdict = Tri::Unknown;
    return r;
  }
  if (existence == LogExistence::NoRealLog) {
    r.route = "no-real-log";
    r.verdict = Tri::No;
    return r;
  }

  r.route = "branch-search";
  std::vector<RealGenerator> branches;
  try {
    branches = real_log_branches(ptm, k_max);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Defective) throw;
    r.verdict = Tri::Unknown;
    r.principal_branch_only = true;
    return r;
  }
  for (const auto& g : branches) {
    if (is_ccp(g).ok) {
      r.verdict = Tri::Yes;
      r.generator = g;
      return r;
    }
  }
  // A positive spectrum without repeated eigenvalues has a unique real log.
  bool unique = existence == LogExistence::PositiveSpectrum;
  if (unique) {
    Eigen::EigenSolver<Matrix4> es(m, false);
    const Eigen::Vector4cd ev = es.eigenvalues();
    for (int i = 0; i < 4 && unique; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (std::abs(ev(i) - ev(j)) <= tol::kDegenerate * std::max(1.0, std::abs(ev(i)))) unique = false;
  }
  if (unique) {
    r.verdict = Tri::No;
  } else {
    r.verdict = Tri::Unknown;
    r.principal_branch_only = true;
  }
  return r;
}

double ppt_min_eigenvalue(const PauliTransferMatrix& ptm) {
  const Matrix4c c = choi_of(ptm.matrix());
  Matrix4c pt;
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 2; ++j)
        for (int b = 0; b < 2; ++b) pt(2 * i + a, 2 * j + b) = c(2 * i + b, 2 * j + a);
  return min_hermitian_eigenvalue(pt);
}

bool is_entanglement_breaking(const PauliTransferMatrix& ptm) { return ppt_min_eigenvalue(ptm) >= -tol::kPsd; }

DivisibilityVerdict classify(const PauliTransferMatrix& ptm) {
  require_cptp(ptm);
  DivisibilityVerdict v;
  v.witnesses["choi_min_eigenvalue"] = is_cptp(ptm).min_choi_eigenvalue;
  v.witnesses["determinant"] = determinant(ptm);
  v.witnesses["kraus_rank"] = kraus_rank(ptm);
  v.witnesses["ppt_min_eigenvalue"] = ppt_min_eigenvalue(ptm);

  v.divisible = classify_divisible(ptm);
  v.p_divisible = is_p_divisible(ptm);
  v.cp_divisible = is_cp_divisible(ptm);
  const LDivisibility l = is_l_divisible(ptm);
  v.l_divisible = l.verdict;
  v.entanglement_breaking = is_entanglement_breaking(ptm);
  v.chi = v.entanglement_breaking ? 1 : 0;

  if (l.generator) v.witnesses["ccp_min_eigenvalue"] = is_ccp(*l.generator).min_eigenvalue;
  if (l.principal_branch_only) v.notes.push_back("l_divisible: principal-branch verdict, gauge continuum not searched");
  if (v.l_divisible == Tri::Yes && v.cp_divisible == Tri::Unknown) {
    v.cp_divisible = Tri::Yes;
    v.notes.push_back("cp_divisible inferred from l_divisible");
  }
  // exp(L) = exp(L/2) exp(L/2) with non-unitary factors unless L is Hamiltonian.
  if (l.generator && v.divisible == Tri::Unknown) {
    v.divisible = Tri::Yes;
    v.notes.push_back("divisible inferred from the Lindblad generator");
  }

  if (v.l_divisible == Tri::Yes)
    v.delta = 1.0;
  else if (v.cp_divisible == Tri::Yes)
    v.delta = 2.0 / 3.0;
  else if (v.p_divisible)
    v.delta = 1.0 / 3.0;
  else
    v.delta = 0.0;
  v.caveat = (v.cp_divisible == Tri::Unknown && v.p_divisible) ||
             (v.l_divisible == Tri::Unknown && v.cp_divisible == Tri::Yes);
  return v;
}

double delta(const PauliTransferMatrix& ptm) { return classify(ptm).delta; }

int chi(const PauliTransferMatrix& ptm) {
  require_cptp(ptm);
  return is_entanglement_breaking(ptm) ? 1 : 0;
}

}  // namespace qdiv
