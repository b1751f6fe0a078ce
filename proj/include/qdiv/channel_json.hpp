#pragma once

// Channel file schema:
//   {"format": "ptm",   "matrix": [[4 reals] x 4]}
//   {"format": "kraus", "operators": [{"re": [[2] x 2], "im": [[2] x 2]}, ...]}
//   {"format": "choi",  "re": [[4] x 4], "im": [[4] x 4]}
// Rows are in (1, sx, sy, sz) order for PTMs and computational order for Choi
// and Kraus matrices.

#include <string>

#include <json.hpp>

#include "qdiv/channel.hpp"

namespace qdiv {

// Throws Error(Parse) on schema violations and Error(NotCptp) when the
// described map is not trace preserving.
PauliTransferMatrix channel_from_json(const nlohmann::json& doc);
PauliTransferMatrix load_channel(const std::string& path);

nlohmann::json channel_to_json(const PauliTransferMatrix& ptm);
nlohmann::json kraus_to_json(const KrausSet& kraus);
nlohmann::json choi_to_json(const ChoiMatrix& choi);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int rows, int cols);

}  // namespace qdiv
