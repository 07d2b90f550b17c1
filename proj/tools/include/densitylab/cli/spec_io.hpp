#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "densitylab/intset.hpp"

namespace densitylab::cli {

using json = nlohmann::json;

/// [[a, b], ...] in ascending order.
json to_json(const IntervalSet& set);
IntervalSet interval_set_from_json(const json& j);

/// {"kind": ..., "params": {...}}; see docs/set_spec.schema.json.
json to_json(const SetSpec& spec);
/// Throws ValidationError on any schema violation.
SetSpec set_spec_from_json(const json& j);

/// A --set argument: a family name (full, even, squarefree, primes, empty),
/// "example2:j=2,depth=4", "explicit:1,2,3", "intervals:2-4,65-130", inline
/// JSON, or a path to a JSON file.
SetSpec parse_set_argument(std::string_view text);

/// Non-negative integer, plain ("10000000") or scientific ("1e7", "2.5e6").
/// Throws ValidationError unless the value is an exact 64-bit integer.
u64 parse_count(std::string_view text);

}  // namespace densitylab::cli
