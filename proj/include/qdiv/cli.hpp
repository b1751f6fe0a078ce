#pragma once

// Command implementations behind the `qdiv` executable. Each returns the
// process exit code:
//   0 ok, 1 I/O, parse or usage error, 2 channel not CPTP,
//   3 no real logarithm, 4 singular channel.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdiv/channel.hpp"
#include "qdiv/divisibility.hpp"
#include "qdiv/dynamics.hpp"

namespace qdiv {

enum ExitCode { kExitOk = 0, kExitIo = 1, kExitNotCptp = 2, kExitNoRealLog = 3, kExitSingular = 4 };

struct SweepSpec {
  enum class Slice { PlaneSum, NonUnitalTau, FullGrid };

  Slice slice = Slice::FullGrid;
  double plane_sum = 0.0;           // PlaneSum, and NonUnitalTau when set
  bool tau_has_plane_sum = false;
  Vector3 tau = Vector3::Zero();    // NonUnitalTau
  int resolution = 50;
  std::string output_path;

  // Throws Error(InvalidArgument).
  void validate() const;
};

struct SweepRow {
  Vector3 l = Vector3::Zero();
  bool cptp = false;
  int div = -1;  // tri-states: 1 yes, 0 no, -1 unknown or not a channel
  int p = -1;
  int cp = -1;
  int l_div = -1;
  int eb = -1;
  double delta = -1.0;
};

// Grid points in [-1, 1] per axis, boundaries included.
std::vector<Vector3> sweep_points(const SweepSpec& spec);
SweepRow sweep_point(const Vector3& lambdas, const Vector3& tau);
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::istream& is);

struct TraceSpec {
  enum class Model { Anot, JC };

  Model model = Model::Anot;
  JCParams jc;
  double t_max = 0.0;
  int steps = 1000;
  std::string output_path;  // empty: standard output
};

int cmd_classify(const std::string& input_path, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepSpec& spec, std::ostream& err);
int cmd_trace(const TraceSpec& spec, std::ostream& out, std::ostream& err);
int cmd_lognormal(const std::string& input_path, int k_max, std::ostream& out, std::ostream& err);
int cmd_normalform(const std::string& input_path, std::ostream& out, std::ostream& err);
// Prints a seeded random channel of the given Kraus rank as channel JSON.
int cmd_sample(unsigned long long seed, int rank, std::ostream& out, std::ostream& err);

}  // namespace qdiv
