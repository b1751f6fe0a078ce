#pragma once

// JSON records for verdicts, normal forms and generators, and the number
// formatting shared by the CSV writers.

#include <string>
#include <string_view>

#include <json.hpp>

#include "qdiv/divisibility.hpp"
#include "qdiv/normal_forms.hpp"
#include "qdiv/real_log.hpp"

namespace qdiv {

// Shortest representation that parses back to the same double.
std::string format_double(double x);
// Throws Error(Parse) unless the whole string is a number.
double parse_double(std::string_view s);

nlohmann::json verdict_to_json(const DivisibilityVerdict& v);
nlohmann::json normal_form_to_json(const SpecialOrthogonalNormalForm& nf, const PauliTransferMatrix& ptm);
nlohmann::json lorentz_to_json(const LorentzDecomposition& d, const PauliTransferMatrix& ptm);
nlohmann::json generator_to_json(const RealGenerator& g, const PauliTransferMatrix& ptm);

}  // namespace qdiv
