#ifndef MOPUC_SERIALIZATION_HPP
#define MOPUC_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "mopuc/measure.hpp"
#include "mopuc/opuc.hpp"
#include "mopuc/sumrule.hpp"

namespace mopuc {

// Complex matrices serialize as flat row-major arrays of [re, im] pairs with
// an explicit "dim" field: {"dim": p, "entries": [[re, im], ...]}.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// {"dim": p, "coeffs": [entries, ...]} with each element the flat entry list
// of one p x p coefficient.
nlohmann::json verblunsky_to_json(const VerblunskySequence& alpha);
VerblunskySequence verblunsky_from_json(const nlohmann::json& j);

// {"dim": p, "grid_size": M, "density": [entries, ...] | "lambda0" | "lambda_g:<g>",
//  "atoms": [{"theta": t, "weight": entries}, ...]}
nlohmann::json measure_to_json(const MatrixMeasure& mu);
MatrixMeasure measure_from_json(const nlohmann::json& j);

/// Builtin measure by name: "lambda0" or "lambda_g:<g>".
MatrixMeasure builtin_measure(const std::string& name, Index dim, Index grid_size);
bool is_builtin_measure_name(const std::string& name);

nlohmann::json report_to_json(const SumRuleReport& r);

/// Frozen CSV layout; the header is a '#' comment carrying the format version.
std::string report_csv_header();
std::string report_csv_row(const SumRuleReport& r);

} // namespace mopuc

#endif
