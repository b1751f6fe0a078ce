// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qdiv/channel_json.hpp"
#include "qdiv/divisibility.hpp"
#include "qdiv/dynamics.hpp"
#include "qdiv/error.hpp"
#include "qdiv/normal_forms.hpp"
#include "qdiv/random_channels.hpp"
#include "qdiv/real_log.hpp"

using namespace qdiv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome criterion1() {
  Outcome o;
  const PauliTransferMatrix a = PauliTransferMatrix::pauli(-1.0 / 3, -1.0 / 3, -1.0 / 3);
  o.require(std::abs(determinant(a) + 1.0 / 27) <= 1e-15, fmt("det = %.17g", determinant(a)));
  o.require(classify_divisible(a) == Tri::No, "classify_divisible is not No");
  const DivisibilityVerdict v = classify(a);
  o.require(v.delta == 0.0, fmt("delta = %g", v.delta));
  o.require(v.chi == 1, "chi != 1");
  o.detail = o.pass ? "det(A_NOT) = -1/27, indivisible, delta 0, chi 1" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const int n = 1000;
  const std::vector<double> grid = uniform_grid(kPi, n);
  const double step = grid[1] - grid[0];
  const auto points = trace_trajectory(anot_map, grid);

  std::vector<double> runs;
  for (const auto& p : points) {
    o.require(p.delta != 2.0 / 3, fmt("delta = 2/3 at t = %g", p.t));
    if (runs.empty() || runs.back() != p.delta) runs.push_back(p.delta);
  }
  const std::vector<double> expected{1.0, 1.0 / 3, 0.0, 1.0 / 3, 1.0};
  o.require(runs == expected, "delta run sequence is not 1, 1/3, 0, 1/3, 1");

  std::vector<double> flips;
  for (std::size_t i = 1; i < points.size(); ++i)
    if ((points[i].det < 0) != (points[i - 1].det < 0)) flips.push_back(0.5 * (points[i].t + points[i - 1].t));
  o.require(flips.size() == 2, "determinant does not change sign exactly twice");
  if (flips.size() == 2) {
    o.require(std::abs(flips[0] - kPi / 3) <= step, fmt("first sign change at %g", flips[0]));
    o.require(std::abs(flips[1] - 2 * kPi / 3) <= step, fmt("second sign change at %g", flips[1]));
  }

  // chi = 1 on one contiguous run that covers [pi/3, 2pi/3].
  double lo = INFINITY, hi = -INFINITY;
  int chi_runs = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].chi != 1) continue;
    if (i == 0 || points[i - 1].chi != 1) ++chi_runs;
    lo = std::min(lo, points[i].t);
    hi = std::max(hi, points[i].t);
  }
  o.require(chi_runs == 1, "chi = 1 is not a single interval");
  o.require(lo <= kPi / 3 + step && hi >= 2 * kPi / 3 - step, "chi = 1 interval misses [pi/3, 2pi/3]");
  if (o.pass)
    o.detail = "delta runs 1,1/3,0,1/3,1; det flips at " + fmt("%.5f", flips[0]) + " and " + fmt("%.5f", flips[1]) +
               "; chi = 1 on [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const PauliTransferMatrix e = load_channel(QDIV_TEST_DATA "/nondiagonal_lorentz.json");
  const LorentzDecomposition d = lorentz_normal_form(e);
  o.require(std::abs(d.b_offdiag) > 1e-6, fmt("b_offdiag = %g", d.b_offdiag));
  o.require(lorentz_residual(d.l1) <= 1e-8 && lorentz_residual(d.l2) <= 1e-8, "Lorentz certificate failed");
  o.require(d.l1(0, 0) > 0 && d.l2(0, 0) > 0, "Lorentz factors are not orthochronous");
  o.require(std::abs(d.l1.determinant() - 1) <= 1e-8 && std::abs(d.l2.determinant() - 1) <= 1e-8,
            "Lorentz factors are not proper");
  o.require(reconstruction_residual(d, e) <= 1e-8, fmt("reconstruction residual %g", reconstruction_residual(d, e)));
  o.require(std::abs(std::abs(d.sigma(1, 1)) - 1.0 / 3) <= 1e-9 && std::abs(std::abs(d.sigma(2, 2)) - 1.0 / 3) <= 1e-9,
            "interior Sigma entries are not 1/3 in magnitude");
  if (o.pass) o.detail = "b = " + fmt("%.6f", d.b_offdiag) + ", residual " + fmt("%.2e", reconstruction_residual(d, e));
  return o;
}

Outcome criterion4() {
  Outcome o;
  int checked = 0, disagreements = 0, cp_l_mismatch = 0;
  for (int i = 1; i <= 40; ++i) {
    for (int j = 1; j <= 40; ++j) {
      for (int k = 1; k <= 40; ++k) {
        const Vector3 l(i / 40.0, j / 40.0, k / 40.0);
        if (!pauli_cp_region(l)) continue;
        ++checked;
        const bool analytic = pauli_l_divisible_analytic(l) == Tri::Yes;
        const auto gens = real_log_branches(PauliTransferMatrix::pauli(l), 0);
        const bool ccp = is_ccp(gens.front()).ok;
        if (analytic != ccp) ++disagreements;
        if (pauli_cp_divisible_analytic(l) != analytic) ++cp_l_mismatch;
      }
    }
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " analytic/ccp disagreements");
  o.require(cp_l_mismatch == 0, std::to_string(cp_l_mismatch) + " CP/L closed-form mismatches");
  if (o.pass) o.detail = std::to_string(checked) + " grid points, zero disagreements";
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(5005);
  int found = 0, violations = 0, draws = 0;
  while (found < 10000) {
    const PauliTransferMatrix e = random_channel(rng, 1 + draws % 4);
    ++draws;
    if (determinant(e) >= -1e-6) continue;
    ++found;
    if (!is_entanglement_breaking(e)) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " non-EB channels with negative determinant");
  if (o.pass) o.detail = "10000 channels with det < -1e-6 (from " + std::to_string(draws) + " draws), all EB";
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(6006);
  int violations = 0, unknown = 0;
  for (int i = 0; i < 10000; ++i) {
    const PauliTransferMatrix e = i % 3 == 0 ? random_unital_channel(rng) : random_channel(rng, 1 + i % 4);
    const Tri l = is_l_divisible(e).verdict;
    const Tri cp = is_cp_divisible(e);
    const bool p = is_p_divisible(e);
    if (l == Tri::Unknown || cp == Tri::Unknown) ++unknown;
    if (l == Tri::Yes && cp == Tri::No) ++violations;
    if (cp == Tri::Yes && !p) ++violations;
    if (l == Tri::Yes && !p) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " hierarchy violations");
  if (o.pass) o.detail = "10000 channels, zero violations (" + std::to_string(unknown) + " with an Unknown skipped)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  JCParams p;  // alpha 6, g 10, wa 5, wf 20, n_max 84
  const JaynesCummingsModel model(p);
  const std::vector<double> grid = uniform_grid(10.0, 200);
  const auto points = trace_trajectory([&](double t) { return model.channel(t); }, grid);

  double worst = 0.0;
  for (const auto& pt : points) {
    const PauliTransferMatrix e = model.channel(pt.t);
    const double pe = 0.5 * (1.0 + apply(e, Vector3(0, 0, -1))(2));
    worst = std::max(worst, std::abs(pe - jc_pe_analytic(pt.t, p, 400)));
  }
  o.require(worst <= 1e-6, fmt("max |p_e - series| = %g", worst));
  const double pe0 = 0.5 * (1.0 + apply(model.channel(0.0), Vector3(0, 0, -1))(2));
  o.require(std::abs(pe0) <= 1e-12, fmt("p_e(0) = %g", pe0));

  // A revival window is where the series p_e still oscillates visibly: the
  // spread of p_e over +-0.05 (about one Rabi period) exceeds 0.2.
  const auto spread = [&](double t) {
    double lo = INFINITY, hi = -INFINITY;
    for (int i = -20; i <= 20; ++i) {
      const double v = jc_pe_analytic(std::max(0.0, t + 0.05 * i / 20), p, 400);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };
  int revival = 0, revival_bad = 0, delta_zero = 0, delta_zero_bad = 0;
  for (const auto& pt : points) {
    if (spread(pt.t) > 0.2) {
      ++revival;
      if (pt.chi != 0) ++revival_bad;
    }
    if (pt.delta == 0.0) {
      ++delta_zero;
      if (pt.chi != 1) ++delta_zero_bad;
    }
  }
  o.require(revival > 0, "no revival window found");
  o.require(revival_bad == 0, std::to_string(revival_bad) + " revival points with chi = 1");
  o.require(delta_zero_bad == 0, std::to_string(delta_zero_bad) + " points with delta = 0 and chi = 0");
  if (o.pass)
    o.detail = "p_e error " + fmt("%.2e", worst) + "; " + std::to_string(revival) + " revival points with chi = 0; " +
               std::to_string(delta_zero) + " delta = 0 points all EB";
  return o;
}

Outcome criterion8() {
  Outcome o;
  Rng rng(8008);
  int admitted = 0, branches = 0, skipped_defective = 0;
  double worst = 0.0;
  while (admitted < 1000) {
    const PauliTransferMatrix e = random_channel(rng);
    const LogExistence ex = log_branch_existence(e);
    if (ex == LogExistence::NoRealLog || ex == LogExistence::Singular) continue;
    std::vector<RealGenerator> gens;
    try {
      gens = real_log_branches(e);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Defective) throw;
      ++skipped_defective;
      continue;
    }
    ++admitted;
    for (const auto& g : gens) {
      ++branches;
      worst = std::max(worst, (expm(g.entries) - e.matrix()).cwiseAbs().maxCoeff());
    }
  }
  o.require(worst <= 1e-9, fmt("worst round trip %g", worst));
  if (o.pass)
    o.detail = "1000 channels, " + std::to_string(branches) + " branches, worst " + fmt("%.2e", worst) +
               (skipped_defective ? " (" + std::to_string(skipped_defective) + " defective skipped)" : "");
  return o;
}

Outcome criterion9() {
  Outcome o;
  double prev = INFINITY;
  for (double n : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
    Matrix4 gen = Matrix4::Zero();
    gen(1, 1) = gen(2, 2) = gen(3, 3) = -n;
    const PauliTransferMatrix e = exp_generator(gen, 1.0);
    Matrix4 target = Matrix4::Zero();
    target(0, 0) = 1;
    const double err = (e.matrix() - target).cwiseAbs().maxCoeff();
    // exp(-n) itself is the error; allow one ulp of it for rounding.
    o.require(err <= std::exp(-n) * (1 + 1e-12), fmt("error at n = %g exceeds exp(-n)", n));
    o.require(err <= prev, fmt("error not decreasing at n = %g", n));
    prev = err;
  }
  for (double lambda : {0.1, 0.5, 0.9}) {
    for (double n : {2.0, 5.0, 10.0}) {
      const double eps = std::sqrt(lambda) / n;
      const PauliTransferMatrix e = PauliTransferMatrix::pauli(eps, eps, lambda);
      o.require(is_l_divisible(e).verdict == Tri::Yes, fmt("closure family member not L-divisible, lambda %g", lambda));
    }
  }
  if (o.pass) o.detail = "exp(diag(0,-n,-n,-n)) -> N within exp(-n); 9 family members L-divisible";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                        criterion6, criterion7, criterion8, criterion9};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
