#include "qdiv/dynamics.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qdiv/divisibility.hpp"
#include "qdiv/error.hpp"
#include "qdiv/parallel.hpp"
#include "qdiv/report.hpp"
#include "qdiv/tolerances.hpp"

namespace qdiv {

using namespace std::complex_literals;

// --- collision model -------------------------------------------------------------

Matrix4 anot_commutator_ptm() {
  return superop_from_map([](const Matrix2c& rho) {
    Matrix2c out = Matrix2c::Zero();
    for (int j = 1; j <= 3; ++j) out += sigma(j) * rho - rho * sigma(j);
    return Matrix2c((1i / 3.0) * out);
  });
}

PauliTransferMatrix anot_map(double t) {
  static const Matrix4 f = anot_commutator_ptm();
  const Matrix4 a_not = Vector4(1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3).asDiagonal();
  const double c = std::cos(t);
  const double s = std::sin(t);
  Matrix4 m = c * c * Matrix4::Identity() + s * s * a_not + 0.5 * std::sin(2.0 * t) * f;
  m.row(0) << 1, 0, 0, 0;
  return PauliTransferMatrix(m);
}

// --- Jaynes-Cummings ---------------------------------------------------------------

int JCParams::default_n_max(Complex alpha) {
  const double a = std::abs(alpha);
  int n = std::max(1, static_cast<int>(std::ceil(a * a + 8.0 * a)));
  if (a == 0.0) return n;
  // Small |alpha| has a heavier relative tail than the mean + 8 sigma rule.
  const auto edge = [&](int k) { return std::exp(-a * a + 2.0 * k * std::log(a) - std::lgamma(k + 1.0)); };
  while (edge(n) > tol::kTruncation) ++n;
  return n;
}

void JCParams::validate() const {
  if (!(g > 0)) throw Error(ErrorKind::InvalidArgument, "JC coupling g must be positive", g);
  if (n_max <= 0) throw Error(ErrorKind::InvalidArgument, "JC truncation n_max must be positive", n_max);
  if (!std::isfinite(wa) || !std::isfinite(wf) || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw Error(ErrorKind::InvalidArgument, "JC parameters must be finite");
  const int needed = default_n_max(alpha);
  if (n_max < needed)
    throw Error(ErrorKind::Truncation,
                "Fock truncation too small: n_max must be at least " + std::to_string(needed), n_max);
}

namespace {

// Coherent-state amplitudes on 0..n_max, renormalized on the truncated space.
Eigen::VectorXcd coherent_state(Complex alpha, int n_max) {
  Eigen::VectorXcd c(n_max + 1);
  const double r = std::abs(alpha);
  const double phase = std::arg(alpha);
  for (int n = 0; n <= n_max; ++n) {
    if (r == 0.0) {
      c(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mod = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
    c(n) = std::polar(std::exp(log_mod), n * phase);
  }
  c /= c.norm();
  const double edge = std::norm(c(n_max));
  if (edge > tol::kTruncation)
    throw Error(ErrorKind::Truncation, "coherent-state population at n_max exceeds 1e-10; increase n_max", edge);
  return c;
}

}  // namespace

JaynesCummingsModel::JaynesCummingsModel(const JCParams& params) : p_(params) {
  p_.validate();
  const int levels = p_.n_max + 1;
  dim_ = 2 * levels;
  // Index atom * levels + n with atom 0 = excited, 1 = ground.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int n = 0; n < levels; ++n) {
    h(n, n) = 0.5 * p_.wa + p_.wf * (n + 0.5);
    h(levels + n, levels + n) = -0.5 * p_.wa + p_.wf * (n + 0.5);
  }
  for (int n = 0; n + 1 < levels; ++n) {
    const double coupling = p_.g * std::sqrt(n + 1.0);
    h(levels + n + 1, n) = coupling;
    h(n, levels + n + 1) = coupling;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();

  const Eigen::VectorXcd field = coherent_state(p_.alpha, p_.n_max);
  for (int atom = 0; atom < 2; ++atom) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim_);
    psi.segment(atom * levels, levels) = field;
    coefficients_[static_cast<std::size_t>(atom)] = vectors_.transpose().cast<Complex>() * psi;
  }
}

Eigen::VectorXcd JaynesCummingsModel::evolve(int atom, double t) const {
  const Eigen::VectorXcd& d = coefficients_[static_cast<std::size_t>(atom)];
  Eigen::VectorXcd phased(dim_);
  for (int k = 0; k < dim_; ++k) phased(k) = std::polar(1.0, -energies_(k) * t) * d(k);
  return vectors_.cast<Complex>() * phased;
}

std::array<double, 2> JaynesCummingsModel::state_norms(double t) const {
  return {evolve(0, t).norm(), evolve(1, t).norm()};
}

PauliTransferMatrix JaynesCummingsModel::channel(double t) const {
  const int levels = p_.n_max + 1;
  const std::array<Eigen::VectorXcd, 2> psi{evolve(0, t), evolve(1, t)};
  // images[j][k] = Tr_F |psi_j><psi_k|
  std::array<std::array<Matrix2c, 2>, 2> images;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      Matrix2c m;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          m(a, b) = psi[static_cast<std::size_t>(k)]
                        .segment(b * levels, levels)
                        .dot(psi[static_cast<std::size_t>(j)].segment(a * levels, levels));
      images[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = m;
    }
  }
  Matrix4 m = superop_from_map([&](const Matrix2c& x) {
    Matrix2c out = Matrix2c::Zero();
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out += x(j, k) * images[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    return out;
  });
  return PauliTransferMatrix(m);
}

double JaynesCummingsModel::excited_population(double t) const {
  const int levels = p_.n_max + 1;
  return evolve(1, t).head(levels).squaredNorm();
}

PauliTransferMatrix jc_channel(double t, const JCParams& p) { return JaynesCummingsModel(p).channel(t); }

double jc_pe_analytic(double t, const JCParams& p, int n_terms) {
  const double r2 = std::norm(p.alpha);
  const double delta = p.detuning();
  double weight_sum = 0.0;
  double sz = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const double pn = r2 == 0.0 ? (n == 0 ? 1.0 : 0.0)
                                : std::exp(-r2 + n * std::log(r2) - std::lgamma(n + 1.0));
    weight_sum += pn;
    if (n == 0) {
      sz -= pn;
      continue;
    }
    const double omega2 = 0.25 * delta * delta + p.g * p.g * n;
    const double ratio = 0.25 * delta * delta / omega2;
    sz -= pn * (ratio + (1.0 - ratio) * std::cos(2.0 * std::sqrt(omega2) * t));
  }
  const double tail = 1.0 - weight_sum;
  if (tail >= 1e-12) throw Error(ErrorKind::Truncation, "Poisson tail beyond n_terms is not below 1e-12", tail);
  return 0.5 * (sz + 1.0);
}

// --- intermediate maps and trajectories ------------------------------------------

Matrix4 intermediate_map(const PauliTransferMatrix& e_t, const PauliTransferMatrix& e_s) {
  Eigen::JacobiSVD<Matrix4> svd(e_t.matrix());
  const double smin = svd.singularValues()(3);
  if (smin <= tol::kRank)
    throw Error(ErrorKind::Singular,
                "intermediate map undefined: E_t is singular (smallest singular value " + format_double(smin) + ")",
                smin);
  return e_t.matrix().inverse() * e_s.matrix();
}

std::vector<double> uniform_grid(double t_max, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "time grid needs at least one step", steps);
  if (!(t_max >= 0)) throw Error(ErrorKind::InvalidArgument, "t_max must be non-negative", t_max);
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = steps == 1 ? 0.0 : t_max * i / (steps - 1);
  return grid;
}

std::vector<TrajectoryPoint> trace_trajectory(const ChannelSource& map, const std::vector<double>& t_grid,
                                              const ScalarSource& pe) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw Error(ErrorKind::InvalidArgument, "time grid must be sorted ascending");
  std::vector<TrajectoryPoint> out(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const PauliTransferMatrix e = map(t);
    const DivisibilityVerdict v = classify(e);
    TrajectoryPoint& p = out[i];
    p.t = t;
    p.delta = v.delta;
    p.chi = v.chi;
    p.det = determinant(e);
    if (pe) p.pe = pe(t);
  });
  return out;
}

double sampled_positivity(const Matrix4& map, int samples) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const Matrix3 delta = map.block<3, 3>(1, 1);
  const Vector3 shift = map.block<3, 1>(1, 0);
  double worst = INFINITY;
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / samples;
    const double rho = std::sqrt(1.0 - z * z);
    const double phi = golden * i;
    const Vector3 r(rho * std::cos(phi), rho * std::sin(phi), z);
    // Output Bloch vector r'; its state has eigenvalues (1 +- |r'|) / 2.
    const Vector3 out = delta * r + shift;
    worst = std::min(worst, 0.5 * (1.0 - out.norm()));
  }
  return worst;
}

IntervalDivisibility interval_divisibility(const ChannelSource& map, const std::vector<double>& t_grid) {
  IntervalDivisibility r;
  r.min_choi_eigenvalue = INFINITY;
  r.min_sampled_eigenvalue = INFINITY;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const PauliTransferMatrix a = map(t_grid[i]);
    const PauliTransferMatrix b = map(t_grid[i + 1]);
    // Propagator taking E_t to E_s, i.e. E_s = step * E_t.
    intermediate_map(a, a);  // singularity check
    const Matrix4 step = b.matrix() * a.matrix().inverse();
    const double choi = choi_min_eigenvalue(step);
    const double sampled = sampled_positivity(step);
    r.min_choi_eigenvalue = std::min(r.min_choi_eigenvalue, choi);
    r.min_sampled_eigenvalue = std::min(r.min_sampled_eigenvalue, sampled);
    if (choi < -tol::kPsd) {
      r.cp_divisible = false;
      if (!r.first_cp_failure) r.first_cp_failure = t_grid[i];
    }
    if (sampled < -1e-8) r.p_divisible_sampled = false;
  }
  return r;
}

// --- CSV ---------------------------------------------------------------------------

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points) {
  os << "t,delta,chi,det,pe\n";
  for (const auto& p : points) {
    os << format_double(p.t) << ',' << format_double(p.delta) << ',' << p.chi << ',' << format_double(p.det) << ',';
    if (p.pe) os << format_double(*p.pe);
    os << '\n';
  }
}

std::vector<TrajectoryPoint> parse_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t,delta,chi,det,pe")
    throw Error(ErrorKind::Parse, "trajectory CSV: missing or wrong header");
  std::vector<TrajectoryPoint> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 5) throw Error(ErrorKind::Parse, "trajectory CSV: expected 5 columns: " + line);
    TrajectoryPoint p;
    p.t = parse_double(cells[0]);
    p.delta = parse_double(cells[1]);
    p.chi = static_cast<int>(parse_double(cells[2]));
    p.det = parse_double(cells[3]);
    if (!cells[4].empty()) p.pe = parse_double(cells[4]);
    out.push_back(p);
  }
  return out;
}

}  // namespace qdiv
