#include "qdiv/channel_json.hpp"

#include <fstream>

#include "qdiv/error.hpp"

namespace qdiv {

using nlohmann::json;

Eigen::MatrixXd matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw Error(ErrorKind::Parse, "expected a matrix with " + std::to_string(rows) + " rows");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw Error(ErrorKind::Parse, "expected " + std::to_string(cols) + " entries in row " + std::to_string(r));
    for (int c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw Error(ErrorKind::Parse, "matrix entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

namespace {

Eigen::MatrixXcd complex_from_json(const json& parent, int dim) {
  if (!parent.contains("re")) throw Error(ErrorKind::Parse, "complex matrix needs an \"re\" field");
  Eigen::MatrixXcd m = matrix_from_json(parent.at("re"), dim, dim).cast<Complex>();
  if (parent.contains("im"))
    m += Complex(0.0, 1.0) * matrix_from_json(parent.at("im"), dim, dim).cast<Complex>();
  return m;
}

}  // namespace

PauliTransferMatrix channel_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("format") || !doc.at("format").is_string())
    throw Error(ErrorKind::Parse, "channel document needs a string \"format\" field");
  const std::string format = doc.at("format").get<std::string>();
  if (format == "ptm") {
    if (!doc.contains("matrix")) throw Error(ErrorKind::Parse, "ptm channel needs a \"matrix\" field");
    return PauliTransferMatrix(matrix_from_json(doc.at("matrix"), 4, 4));
  }
  if (format == "kraus") {
    if (!doc.contains("operators") || !doc.at("operators").is_array())
      throw Error(ErrorKind::Parse, "kraus channel needs an \"operators\" array");
    std::vector<Matrix2c> ops;
    for (const json& op : doc.at("operators")) ops.emplace_back(complex_from_json(op, 2));
    return ptm_from_kraus(KrausSet(std::move(ops)));
  }
  if (format == "choi") return ptm_from_choi(ChoiMatrix(complex_from_json(doc, 4)));
  throw Error(ErrorKind::Parse, "unknown channel format \"" + format + "\"");
}

PauliTransferMatrix load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return channel_from_json(doc);
}

json channel_to_json(const PauliTransferMatrix& ptm) {
  return {{"format", "ptm"}, {"matrix", matrix_to_json(ptm.matrix())}};
}

json kraus_to_json(const KrausSet& kraus) {
  json ops = json::array();
  for (const auto& k : kraus.operators())
    ops.push_back({{"re", matrix_to_json(k.real())}, {"im", matrix_to_json(k.imag())}});
  return {{"format", "kraus"}, {"operators", ops}};
}

json choi_to_json(const ChoiMatrix& choi) {
  return {{"format", "choi"},
          {"re", matrix_to_json(choi.matrix().real())},
          {"im", matrix_to_json(choi.matrix().imag())}};
}

}  // namespace qdiv
