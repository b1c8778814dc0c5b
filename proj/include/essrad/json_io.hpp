#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "essrad/finite_matrix.hpp"
#include "essrad/operator_family.hpp"
#include "essrad/operator_set.hpp"
#include "essrad/weight_sequence.hpp"

namespace essrad::io {

using nlohmann::json;

// Readers throw SchemaError with a JSON-pointer style path to the offending
// field, or DomainError/ShapeError when the values violate an invariant.
FiniteMatrix matrix_from_json(const json& j, const std::string& path = "");
WeightSequence weights_from_json(const json& j, const std::string& path = "");
OperatorFamily family_from_json(const json& j, const std::string& path = "");
/// A list of matrices or a list of families. A single object is read as a
/// singleton set.
OperatorSet set_from_json(const json& j, const std::string& path = "");
/// True when the object looks like a finite matrix (has "entries").
bool is_matrix_json(const json& j);

json to_json(const FiniteMatrix& a);
json to_json(const WeightSequence& w);
json to_json(const OperatorFamily& a);
json to_json(const OperatorSet& s);

/// Parses text, reporting syntax errors with line and column.
json parse_text(const std::string& text, const std::string& source);
json load_file(const std::string& path);

/// Stable serialization used for digests and reports.
std::string dump(const json& j, int indent = -1);
/// FNV-1a 64-bit hash of dump(j), printed as 16 hex digits.
std::string digest(const json& j);

}  // namespace essrad::io
