#pragma once

// JSON encoding of the kernel types. Objects are std::map-backed, so keys
// come out sorted and canonical() is byte-stable.

#include <string>

#include <json.hpp>

#include "outrank/performance_table.hpp"
#include "outrank/promethee.hpp"
#include "outrank/rational.hpp"

namespace outrank {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, LF line endings, trailing newline.
std::string canonical(const Json& doc);

/// Parses `text`, converting syntax errors to a Data error with line/column.
Json parse_json(const std::string& text, const std::string& what);

/// {"num": n, "den": d, "decimal": "..."}; num/den fall back to strings
/// when they do not fit in 64 bits.
Json rational_to_json(const Rational& value);

/// Accepts the object form, a JSON integer, or a string such as "1/3" or "0.25".
Rational rational_from_json(const Json& value, const std::string& path);

Json function_to_json(const PreferenceFunction<Rational>& f);
PreferenceFunction<Rational> function_from_json(const Json& value, const std::string& path);

std::string direction_name(Direction d);
Direction direction_from_name(const std::string& name, const std::string& path);

std::string relation_name(Relation r);
Relation relation_from_name(const std::string& name, const std::string& path);

Json table_to_json(const PerformanceTable<Rational>& table);
PerformanceTable<Rational> table_from_json(const Json& value, const std::string& path);

Json matrix_to_json(const Matrix<Rational>& values);
Matrix<Rational> matrix_from_json(const Json& value, const std::string& path);

Json flows_to_json(const FlowTable<Rational>& flow);
FlowTable<Rational> flows_from_json(const Json& value, const std::string& path);

Json complete_to_json(const CompleteRanking& ranking);
CompleteRanking complete_from_json(const Json& value, const std::string& path);

Json partial_to_json(const PartialRanking& ranking);
PartialRanking partial_from_json(const Json& value, const std::string& path);

/// Typed accessors that raise Data errors carrying the JSON path.
const Json& require(const Json& obj, const std::string& key, const std::string& path);
std::string require_string(const Json& obj, const std::string& key, const std::string& path);
const Json& require_array(const Json& obj, const std::string& key, const std::string& path);
const Json& require_object(const Json& obj, const std::string& key, const std::string& path);

}  // namespace outrank
