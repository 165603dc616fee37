#pragma once

// Report serialization and the ontic model file format.

#include <string>

#include "json.hpp"

#include "tqd/exclusion.hpp"
#include "tqd/ontic.hpp"

namespace tqd {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolName = "tqd-verify";
inline constexpr const char* kToolVersion = "0.1.0";

/// %.17g, with -0 written as 0.
std::string format_double(double v);

/// Two-space indented JSON with floats at 17 significant digits. Arrays of
/// scalars stay on one line. Ends with a newline.
std::string dump_report(const Json& j);

Json to_json(const Table<double>& t);
Json to_json(const ExclusionMatching& m);

/// {"schema_version", "parties": {name: [points]}, "epistemic": {name:
/// {state: [probabilities]}}, "response": {"<joint index>": [probabilities]}}
/// States keep file order: the first listed is the party's state 0.
Json model_to_json(const OnticModel& model);
/// Throws std::invalid_argument on schema or invariant violations.
OnticModel model_from_json(const Json& j);

}  // namespace tqd
