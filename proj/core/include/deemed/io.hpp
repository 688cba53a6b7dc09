#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "deemed/engine.hpp"
#include "deemed/static_model.hpp"
#include "deemed/temporal_model.hpp"

namespace deemed
{

using nlohmann::json;

[[nodiscard]] std::string read_file( const std::filesystem::path& path );
[[nodiscard]] json read_json_file( const std::filesystem::path& path );

// Model files:
//   {"worlds": [...], "agents": [...], "valuation": {"w0": ["p"], ...},
//    "dabl": [{"w": "w0", "G": ["a"], "sets": [["w0"], ...]}], "conf", "disc", "E", "Att",
//    "Task": [{"w": "w0", "G": ["a"], "pairs": [[["w0"], ["w1"]]]}], "Agree"}
// Throws FormatError; InvalidModel on constraint violations unless allow_invalid.
[[nodiscard]] SCModel model_from_json( const json& j, bool allow_invalid = false );
[[nodiscard]] json model_to_json( const SCModel& m );
[[nodiscard]] SCModel load_model( const std::filesystem::path& path, bool allow_invalid = false );

/// A model object with an extra `"point"` world id.
[[nodiscard]] PointedModel pointed_from_json( const json& j, bool allow_invalid = false );

// Trace files: {"instants": n, "models": [<model with "point"> | {"ref": "file.json", "point": "w0"}]}.
// Refs are resolved against `base`.
[[nodiscard]] TraceModel trace_from_json( const json& j, const std::filesystem::path& base, bool allow_invalid = false );
[[nodiscard]] json trace_to_json( const TraceModel& tm );
[[nodiscard]] TraceModel load_trace( const std::filesystem::path& path, bool allow_invalid = false );

[[nodiscard]] json to_json( const SCModel& m, const ValidationReport& r );
[[nodiscard]] json to_json( const TraceModel& tm, const DAValidationReport& r );
[[nodiscard]] json to_json( const DerivedTrace& dt );
[[nodiscard]] json to_json( const Explanation& ex );

} // namespace deemed
