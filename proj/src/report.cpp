#include "qdiv/report.hpp"

#include <charconv>
#include <cmath>

#include "qdiv/channel_json.hpp"
#include "qdiv/error.hpp"

namespace qdiv {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::Parse, "not a number: '" + std::string(s) + "'");
  return x;
}

nlohmann::json verdict_to_json(const DivisibilityVerdict& v) {
  nlohmann::json j;
  j["divisible"] = to_string(v.divisible);
  j["p_divisible"] = v.p_divisible;
  j["cp_divisible"] = to_string(v.cp_divisible);
  j["l_divisible"] = to_string(v.l_divisible);
  j["entanglement_breaking"] = v.entanglement_breaking;
  j["delta"] = v.delta;
  j["chi"] = v.chi;
  j["caveat"] = v.caveat;
  j["witnesses"] = v.witnesses;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

namespace {

double so3_residual(const Matrix3& r) {
  return std::max((r.transpose() * r - Matrix3::Identity()).cwiseAbs().maxCoeff(), std::abs(r.determinant() - 1.0));
}

}  // namespace

nlohmann::json normal_form_to_json(const SpecialOrthogonalNormalForm& nf, const PauliTransferMatrix& ptm) {
  nlohmann::json j;
  j["r1"] = matrix_to_json(nf.r1);
  j["lambdas"] = vector_to_json(nf.lambdas);
  j["tau"] = vector_to_json(nf.tau);
  j["r2"] = matrix_to_json(nf.r2);
  j["certificates"] = {
      {"reconstruction", (nf.r1 * nf.lambdas.asDiagonal() * nf.r2 - ptm.bloch().delta).cwiseAbs().maxCoeff()},
      {"r1_so3", so3_residual(nf.r1)},
      {"r2_so3", so3_residual(nf.r2)},
  };
  return j;
}

nlohmann::json lorentz_to_json(const LorentzDecomposition& d, const PauliTransferMatrix& ptm) {
  nlohmann::json j;
  j["l1"] = matrix_to_json(d.l1);
  j["sigma"] = matrix_to_json(d.sigma);
  j["l2"] = matrix_to_json(d.l2);
  j["s"] = vector_to_json(d.s);
  j["diagonal"] = d.diagonal;
  j["b_offdiag"] = d.b_offdiag;
  if (d.pattern) {
    j["pattern"] = {{"a", d.pattern->a},
                    {"b", d.pattern->b},
                    {"c", d.pattern->c},
                    {"d", d.pattern->d},
                    {"gauge_applied", d.pattern->gauge_applied}};
  }
  j["certificates"] = {
      {"reconstruction", reconstruction_residual(d, ptm)},
      {"l1_lorentz", lorentz_residual(d.l1)},
      {"l2_lorentz", lorentz_residual(d.l2)},
  };
  return j;
}

nlohmann::json generator_to_json(const RealGenerator& g, const PauliTransferMatrix& ptm) {
  nlohmann::json j;
  const CcpCheck ccp = is_ccp(g);
  j["entries"] = matrix_to_json(g.entries);
  j["branch_k"] = g.branch_k;
  j["source"] = to_string(g.source);
  j["is_lindblad"] = is_lindblad(g);
  j["ccp_witness"] = ccp.min_eigenvalue;
  j["exp_residual"] = (expm(g.entries) - ptm.matrix()).cwiseAbs().maxCoeff();
  return j;
}

}  // namespace qdiv
