#pragma once

// Time-parametrized channels: the collision-model NOT-gate map and the
// Jaynes-Cummings atom channel, with trajectory tracing.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdiv/channel.hpp"

namespace qdiv {

// PTM of F(rho) = (i/3) sum_j [s_j, rho].
Matrix4 anot_commutator_ptm();

// cos^2 t id + sin^2 t A_NOT + sin(2t)/2 F; reaches A_NOT at t = pi/2.
PauliTransferMatrix anot_map(double t);

struct JCParams {
  Complex alpha{6.0, 0.0};
  double g = 10.0;
  double wa = 5.0;
  double wf = 20.0;
  int n_max = 84;

  static int default_n_max(Complex alpha);
  double detuning() const { return wf - wa; }
  // Throws Error(InvalidArgument) or Error(Truncation).
  void validate() const;
};

// Diagonalizes H once; channel(t) is then cheap and thread-safe.
class JaynesCummingsModel {
 public:
  explicit JaynesCummingsModel(const JCParams& params);

  const JCParams& params() const noexcept { return p_; }
  PauliTransferMatrix channel(double t) const;
  // Excited-state population for an atom prepared in the ground state.
  double excited_population(double t) const;
  // Norms of the evolved |e, alpha> and |g, alpha> states.
  std::array<double, 2> state_norms(double t) const;

 private:
  Eigen::VectorXcd evolve(int atom, double t) const;

  JCParams p_;
  int dim_ = 0;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  std::array<Eigen::VectorXcd, 2> coefficients_;  // V^T |atom, alpha>
};

PauliTransferMatrix jc_channel(double t, const JCParams& p);

// Analytic excitation probability with ground-state atom and coherent field.
// Throws Error(Truncation) when the Poisson weight beyond n_terms is >= 1e-12.
double jc_pe_analytic(double t, const JCParams& p, int n_terms);

// E_t^-1 E_s. Throws Error(Singular) with the smallest singular value of e_t.
Matrix4 intermediate_map(const PauliTransferMatrix& e_t, const PauliTransferMatrix& e_s);

struct TrajectoryPoint {
  double t = 0.0;
  double delta = 0.0;
  int chi = 0;
  double det = 0.0;
  std::optional<double> pe;
};

using ChannelSource = std::function<PauliTransferMatrix(double)>;
using ScalarSource = std::function<double(double)>;

std::vector<double> uniform_grid(double t_max, int steps);

// Grid points are classified in parallel; results keep grid order.
std::vector<TrajectoryPoint> trace_trajectory(const ChannelSource& map, const std::vector<double>& t_grid,
                                              const ScalarSource& pe = nullptr);

struct IntervalDivisibility {
  bool cp_divisible = true;
  bool p_divisible_sampled = true;
  double min_choi_eigenvalue = 0.0;    // over all consecutive propagators
  double min_sampled_eigenvalue = 0.0;  // over sampled pure-state outputs
  std::optional<double> first_cp_failure;  // start time of the first failing step
};

// Checks the propagators between consecutive grid times: complete positivity
// through the Choi matrix, positivity by sampling pure inputs.
IntervalDivisibility interval_divisibility(const ChannelSource& map, const std::vector<double>& t_grid);

// Lowest output eigenvalue of a trace-preserving map over pure inputs on a
// Fibonacci sphere.
double sampled_positivity(const Matrix4& map, int samples = 1000);

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points);
std::vector<TrajectoryPoint> parse_trajectory_csv(std::istream& is);

}  // namespace qdiv
