// qdiv: classify qubit channels, sweep Pauli slices, trace dynamical maps.

#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "qdiv/cli.hpp"
#include "qdiv/error.hpp"
#include "qdiv/report.hpp"

namespace {

qdiv::Vector3 parse_triple(const std::string& text) {
  std::stringstream ss(text);
  std::string cell;
  std::vector<double> v;
  while (std::getline(ss, cell, ',')) v.push_back(qdiv::parse_double(cell));
  if (v.size() != 3) throw qdiv::Error(qdiv::ErrorKind::Parse, "expected three comma-separated numbers: " + text);
  return {v[0], v[1], v[2]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisibility classification of qubit channels"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;

  auto* classify = app.add_subcommand("classify", "Print the divisibility verdict of a channel file as JSON");
  classify->add_option("input,--input", input, "Channel JSON file")->required();

  auto* sweep = app.add_subcommand("sweep", "Classify a grid of Pauli (or shifted Pauli) channels into a CSV");
  double slice_sum = 0.0;
  std::string tau_text;
  int resolution = 50;
  sweep->add_option("--slice-sum", slice_sum, "Restrict to the plane l1 + l2 + l3 = c");
  sweep->add_option("--tau", tau_text, "Translation vector x,y,z (non-unital slice)");
  sweep->add_option("--resolution", resolution, "Grid points per axis, in [2, 2000]");
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  auto* trace = app.add_subcommand("trace", "Trace delta, chi and det along a dynamical map");
  std::string model = "anot";
  double alpha_re = 6.0;
  double alpha_im = 0.0;
  qdiv::JCParams jc;
  int n_max = -1;
  double t_max = -1.0;
  int steps = 1000;
  trace->add_option("model,--model", model, "anot or jc")->check(CLI::IsMember({"anot", "jc"}));
  trace->add_option("--alpha", alpha_re, "Coherent amplitude (real part)");
  trace->add_option("--alpha-im", alpha_im, "Coherent amplitude (imaginary part)");
  trace->add_option("--g", jc.g, "Coupling");
  trace->add_option("--wa", jc.wa, "Atom frequency");
  trace->add_option("--wf", jc.wf, "Field frequency");
  trace->add_option("--n-max", n_max, "Fock truncation (default from |alpha|)");
  trace->add_option("--t-max", t_max, "Final time (default pi for anot, 10 for jc)");
  trace->add_option("--steps", steps, "Number of grid points");
  trace->add_option("--out", out_path, "Output CSV path (default stdout)");

  auto* lognormal = app.add_subcommand("lognormal", "List real logarithm branches with their ccp verdicts");
  int k_max = 3;
  lognormal->add_option("input,--input", input, "Channel JSON file")->required();
  lognormal->add_option("--k-max", k_max, "Largest branch index");

  auto* normalform = app.add_subcommand("normalform", "Special orthogonal and Lorentz normal forms");
  normalform->add_option("input,--input", input, "Channel JSON file")->required();

  auto* sample = app.add_subcommand("sample", "Print a seeded random channel as channel JSON");
  unsigned long long seed = 1;
  int rank = 4;
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--rank", rank, "Kraus rank, 1 to 4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qdiv::kExitIo;
  }

  try {
    if (*classify) return qdiv::cmd_classify(input, std::cout, std::cerr);
    if (*lognormal) return qdiv::cmd_lognormal(input, k_max, std::cout, std::cerr);
    if (*normalform) return qdiv::cmd_normalform(input, std::cout, std::cerr);
    if (*sample) return qdiv::cmd_sample(seed, rank, std::cout, std::cerr);
    if (*sweep) {
      qdiv::SweepSpec spec;
      spec.resolution = resolution;
      spec.output_path = out_path;
      const bool has_sum = sweep->count("--slice-sum") > 0;
      if (!tau_text.empty()) {
        spec.slice = qdiv::SweepSpec::Slice::NonUnitalTau;
        spec.tau = parse_triple(tau_text);
        spec.tau_has_plane_sum = has_sum;
      } else if (has_sum) {
        spec.slice = qdiv::SweepSpec::Slice::PlaneSum;
      }
      spec.plane_sum = slice_sum;
      return qdiv::cmd_sweep(spec, std::cerr);
    }
    if (*trace) {
      qdiv::TraceSpec spec;
      spec.model = model == "jc" ? qdiv::TraceSpec::Model::JC : qdiv::TraceSpec::Model::Anot;
      jc.alpha = {alpha_re, alpha_im};
      jc.n_max = n_max > 0 ? n_max : qdiv::JCParams::default_n_max(jc.alpha);
      spec.jc = jc;
      spec.t_max = t_max >= 0 ? t_max : (spec.model == qdiv::TraceSpec::Model::JC ? 10.0 : std::numbers::pi);
      spec.steps = steps;
      spec.output_path = out_path;
      return qdiv::cmd_trace(spec, std::cout, std::cerr);
    }
  } catch (const qdiv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qdiv::kExitIo;
  }
  return qdiv::kExitIo;
}
