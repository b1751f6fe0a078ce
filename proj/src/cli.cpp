#include "qdiv/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qdiv/channel_json.hpp"
#include "qdiv/error.hpp"
#include "qdiv/normal_forms.hpp"
#include "qdiv/parallel.hpp"
#include "qdiv/random_channels.hpp"
#include "qdiv/report.hpp"
#include "qdiv/tolerances.hpp"

namespace qdiv {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotCptp: return kExitNotCptp;
    case ErrorKind::NoRealLog:
    case ErrorKind::Defective: return kExitNoRealLog;
    case ErrorKind::Singular: return kExitSingular;
    default: return kExitIo;
  }
}

int report_error(const Error& e, std::ostream& err) {
  err << "error (" << to_string(e.kind()) << "): " << e.what();
  if (e.kind() == ErrorKind::NotCptp) err << " [witness " << format_double(e.witness()) << "]";
  err << '\n';
  return exit_code_for(e);
}

// Loads a channel and insists on complete positivity.
PauliTransferMatrix load_cptp(const std::string& path) {
  PauliTransferMatrix ptm = load_channel(path);
  const CptpCheck c = is_cptp(ptm);
  if (!c.ok)
    throw Error(ErrorKind::NotCptp, "channel is not completely positive: min Choi eigenvalue",
                c.min_choi_eigenvalue);
  return ptm;
}

std::vector<double> linspace(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
  v.back() = 1.0;
  return v;
}

std::vector<Vector3> plane_points(double c, int n) {
  std::vector<Vector3> out;
  const std::vector<double> axis = linspace(n);
  for (double x : axis) {
    for (double y : axis) {
      const double z = c - x - y;
      if (std::abs(z) <= 1.0 + 1e-12) out.emplace_back(x, y, std::clamp(z, -1.0, 1.0));
    }
  }
  return out;
}

std::vector<Vector3> cube_points(int n) {
  std::vector<Vector3> out;
  const std::vector<double> axis = linspace(n);
  for (double x : axis)
    for (double y : axis)
      for (double z : axis) out.emplace_back(x, y, z);
  return out;
}

int parse_int_cell(const std::string& s) {
  const double x = parse_double(s);
  if (x != std::floor(x)) throw Error(ErrorKind::Parse, "expected an integer: " + s);
  return static_cast<int>(x);
}

}  // namespace

// --- sweeps ------------------------------------------------------------------------

void SweepSpec::validate() const {
  if (resolution < 2 || resolution > 2000)
    throw Error(ErrorKind::InvalidArgument, "resolution must lie in [2, 2000]", resolution);
  const bool uses_sum = slice == Slice::PlaneSum || (slice == Slice::NonUnitalTau && tau_has_plane_sum);
  if (uses_sum && (plane_sum < -1.0 || plane_sum > 3.0))
    throw Error(ErrorKind::InvalidArgument, "plane sum must lie in [-1, 3]", plane_sum);
  if (!tau.allFinite()) throw Error(ErrorKind::InvalidArgument, "tau must be finite");
}

std::vector<Vector3> sweep_points(const SweepSpec& spec) {
  spec.validate();
  switch (spec.slice) {
    case SweepSpec::Slice::PlaneSum: return plane_points(spec.plane_sum, spec.resolution);
    case SweepSpec::Slice::NonUnitalTau:
      return spec.tau_has_plane_sum ? plane_points(spec.plane_sum, spec.resolution) : cube_points(spec.resolution);
    case SweepSpec::Slice::FullGrid: return cube_points(spec.resolution);
  }
  return {};
}

SweepRow sweep_point(const Vector3& lambdas, const Vector3& tau) {
  SweepRow row;
  row.l = lambdas;
  const PauliTransferMatrix ptm =
      PauliTransferMatrix::from_bloch({lambdas.asDiagonal().toDenseMatrix(), tau});
  row.cptp = is_cptp(ptm).ok;
  if (!row.cptp) return row;
  const DivisibilityVerdict v = classify(ptm);
  row.div = to_int(v.divisible);
  row.p = v.p_divisible ? 1 : 0;
  row.cp = to_int(v.cp_divisible);
  row.l_div = to_int(v.l_divisible);
  row.eb = v.entanglement_breaking ? 1 : 0;
  row.delta = v.delta;
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  const std::vector<Vector3> points = sweep_points(spec);
  const Vector3 tau = spec.slice == SweepSpec::Slice::NonUnitalTau ? spec.tau : Vector3::Zero();
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) { rows[i] = sweep_point(points[i], tau); });
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "l1,l2,l3,cptp,div,p,cp,l,eb,delta\n";
  for (const auto& r : rows) {
    os << format_double(r.l(0)) << ',' << format_double(r.l(1)) << ',' << format_double(r.l(2)) << ','
       << (r.cptp ? 1 : 0) << ',' << r.div << ',' << r.p << ',' << r.cp << ',' << r.l_div << ',' << r.eb << ','
       << format_double(r.delta) << '\n';
  }
}

std::vector<SweepRow> parse_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "l1,l2,l3,cptp,div,p,cp,l,eb,delta")
    throw Error(ErrorKind::Parse, "sweep CSV: missing or wrong header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10) throw Error(ErrorKind::Parse, "sweep CSV: expected 10 columns: " + line);
    SweepRow r;
    r.l = Vector3(parse_double(cells[0]), parse_double(cells[1]), parse_double(cells[2]));
    r.cptp = parse_int_cell(cells[3]) == 1;
    r.div = parse_int_cell(cells[4]);
    r.p = parse_int_cell(cells[5]);
    r.cp = parse_int_cell(cells[6]);
    r.l_div = parse_int_cell(cells[7]);
    r.eb = parse_int_cell(cells[8]);
    r.delta = parse_double(cells[9]);
    rows.push_back(r);
  }
  return rows;
}

// --- commands ----------------------------------------------------------------------

int cmd_classify(const std::string& input_path, std::ostream& out, std::ostream& err) {
  try {
    const PauliTransferMatrix ptm = load_cptp(input_path);
    out << verdict_to_json(classify(ptm)).dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_sweep(const SweepSpec& spec, std::ostream& err) {
  try {
    spec.validate();
    std::ofstream file(spec.output_path);
    if (!file) throw Error(ErrorKind::Io, "cannot open output file '" + spec.output_path + "'");
    write_sweep_csv(file, run_sweep(spec));
    if (!file) throw Error(ErrorKind::Io, "failed writing '" + spec.output_path + "'");
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_trace(const TraceSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<double> grid = uniform_grid(spec.t_max, spec.steps);
    std::vector<TrajectoryPoint> points;
    if (spec.model == TraceSpec::Model::Anot) {
      points = trace_trajectory(anot_map, grid);
    } else {
      const JaynesCummingsModel model(spec.jc);
      points = trace_trajectory([&](double t) { return model.channel(t); }, grid,
                                [&](double t) { return model.excited_population(t); });
    }
    if (spec.output_path.empty()) {
      write_trajectory_csv(out, points);
      return kExitOk;
    }
    std::ofstream file(spec.output_path);
    if (!file) throw Error(ErrorKind::Io, "cannot open output file '" + spec.output_path + "'");
    write_trajectory_csv(file, points);
    if (!file) throw Error(ErrorKind::Io, "failed writing '" + spec.output_path + "'");
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_lognormal(const std::string& input_path, int k_max, std::ostream& out, std::ostream& err) {
  try {
    const PauliTransferMatrix ptm = load_cptp(input_path);
    const LogExistence existence = log_branch_existence(ptm);
    if (existence == LogExistence::NoRealLog)
      throw Error(ErrorKind::NoRealLog,
                  "no real logarithm: a negative eigenvalue has odd multiplicity (real-log existence condition)");
    if (existence == LogExistence::Singular)
      throw Error(ErrorKind::Singular, "singular channel: a zero eigenvalue admits no logarithm");
    nlohmann::json doc;
    doc["existence"] = to_string(existence);
    doc["generators"] = nlohmann::json::array();
    for (const auto& g : real_log_branches(ptm, k_max)) doc["generators"].push_back(generator_to_json(g, ptm));
    out << doc.dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_normalform(const std::string& input_path, std::ostream& out, std::ostream& err) {
  try {
    const PauliTransferMatrix ptm = load_cptp(input_path);
    nlohmann::json doc;
    doc["special_orthogonal"] = normal_form_to_json(special_orthogonal_normal_form(ptm), ptm);
    int code = kExitOk;
    try {
      doc["lorentz"] = lorentz_to_json(lorentz_normal_form(ptm), ptm);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LorentzUnavailable) throw;
      doc["lorentz"] = {{"error", e.what()}};
      err << "warning: " << e.what() << '\n';
      code = kExitSingular;
    }
    out << doc.dump(2) << '\n';
    return code;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_sample(unsigned long long seed, int rank, std::ostream& out, std::ostream& err) {
  try {
    Rng rng(seed);
    out << channel_to_json(random_channel(rng, rank)).dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace qdiv
