#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deemed/engine.hpp"

namespace deemed
{

[[nodiscard]] const std::vector< std::string >& scenario_names();

/// Bundled event log (JSON Lines). Throws Error for an unknown name.
[[nodiscard]] std::string_view scenario_jsonl( std::string_view name );

struct Transcript
{
    std::string name;
    DerivedTrace trace;
    std::vector< std::string > lines;

    [[nodiscard]] std::string text() const;
};

/// Runs a bundled scenario and checks its expected derivation. Throws
/// GoldenMismatch if the derivation deviates.
[[nodiscard]] Transcript replay( std::string_view name );

/// Same checks over an arbitrary log in the scenario's shape.
[[nodiscard]] Transcript replay( std::string_view name, const EventLog& log );

} // namespace deemed
