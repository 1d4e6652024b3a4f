#pragma once

// File formats shared by the library and the command-line tool.
//
//   dataset:   JSON array of {"setting_id", "shots", "counts": {"00", "01", "10", "11"}}
//   pulses:    JSON array of {"ion", "kind", "theta", "phi"}
//   matrices:  JSON {"re": [[...]], "im": [[...]]} or CSV rows "row,col,re,im"
//
// Floating-point values are written with 17 significant digits.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tomo/bootstrap.hpp"
#include "tomo/entangle.hpp"
#include "tomo/measure.hpp"
#include "tomo/pulse.hpp"

namespace tomo::io {

using Json = nlohmann::json;

/// Serialises like Json::dump but prints every double with %.17g.
std::string dump(const Json& value, int indent = 2);
void write(std::ostream& out, const Json& value, int indent = 2);

/// Parse errors surface as Error(MalformedInput).
Json parse(std::string_view text);

Json to_json(const CountsRecord& record);
CountsRecord counts_from_json(const Json& j);
Json dataset_to_json(std::span<const CountsRecord> records);
Dataset dataset_from_json(const Json& j);

Json to_json(const Pulse& pulse);
Pulse pulse_from_json(const Json& j);
Json pulses_to_json(std::span<const Pulse> pulses);
std::vector<Pulse> pulses_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
/// Header "row,col,re,im" followed by dim*dim rows in row-major order.
std::string matrix_to_csv(const ComplexMatrix& m);
ComplexMatrix matrix_from_csv(std::string_view text);

Json to_json(const EntanglementReport& report);
Json to_json(const BootstrapReport& report);

/// Compact "value(error)" notation with the error rounded to one significant
/// digit in the last shown place, e.g. (0.7912, 0.043) -> "0.79(4)".
std::string format_value_error(double value, double error);

}  // namespace tomo::io
