#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deemed/engine.hpp"
#include "deemed/event_log.hpp"
#include "deemed/static_model.hpp"
#include "deemed/temporal_model.hpp"

namespace deemed
{

inline constexpr std::uint64_t default_suite_seed = 42;

struct Counterexample
{
    std::string property;
    std::uint64_t seed = 0; // case seed; regenerates the input
    std::size_t case_index = 0;
    std::optional< std::size_t > instant;
    std::string instantiation;
    nlohmann::json input; // model, trace or event log (shrunk)
};

struct SuiteReport
{
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::map< std::string, std::size_t > checks; // property -> instances checked
    std::vector< Counterexample > counterexamples;
    nlohmann::json observations = nlohmann::json::object(); // reported, not asserted

    [[nodiscard]] bool ok() const { return counterexamples.empty(); }
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string text() const;
};

struct RandomLogParams
{
    std::size_t max_horizon = 6;
    std::size_t max_agents = 3;
    std::size_t max_props = 3;
    std::size_t max_events_per_instant = 3;
    bool random_flags = true;
};

/// A log the engine accepts: candidate events that make the engine fail are
/// discarded during generation.
[[nodiscard]] EventLog random_event_log( std::uint64_t seed, const RandomLogParams& params = {} );

struct RandomTraceParams
{
    std::size_t max_horizon = 6;
    std::size_t max_agents = 2;
    std::size_t max_props = 2;
};

/// Trace of independent valid SC-models over one canonical frame (a world
/// per valuation); C1-C3 are not enforced.
[[nodiscard]] TraceModel random_trace( std::uint64_t seed, const RandomTraceParams& params = {} );

/// Toggles Dabl/Conf/Disc memberships at random instants' points.
[[nodiscard]] TraceModel corrupt_trace( const TraceModel& tm, std::uint64_t seed );

/// The log with every objective and deadline replaced by a random
/// equivalent formula.
[[nodiscard]] EventLog rewrite_objectives( const EventLog& log, std::uint64_t seed );

/// Smallest log reachable by shortening the horizon and dropping events
/// while `fails` keeps holding.
[[nodiscard]] EventLog shrink_log( EventLog log, const std::function< bool( const EventLog& ) >& fails );

/// ltl1..ltl12 over p, q, r, s; ltl8 in its S-mirrored form.
[[nodiscard]] TemporalFormula ltl_axiom( int index, const std::array< TemporalFormula, 4 >& v );
/// ltl8 as printed: q S p -> (q & (q S p)) U p.
[[nodiscard]] TemporalFormula ltl8_as_printed( const std::array< TemporalFormula, 4 >& v );

[[nodiscard]] SuiteReport static_soundness( std::uint64_t seed, std::size_t cases );
/// The static checks over the given models, which may be invalid.
[[nodiscard]] SuiteReport static_soundness( std::span< const SCModel > models, std::uint64_t seed );
[[nodiscard]] SuiteReport temporal_soundness( std::uint64_t seed, std::size_t cases );
/// C1/C2/C3 verdicts against lbda1/lbda2/lbda3 truth per (t, G, objective)
/// over derived, corrupted and unconstrained traces.
[[nodiscard]] SuiteReport axiom_agreement( std::uint64_t seed, std::size_t cases );
[[nodiscard]] SuiteReport interdependence( std::uint64_t seed, std::size_t cases );
/// Looks for unconstrained traces falsifying each lbda axiom; an axiom with
/// no falsifier is a counterexample to the search.
[[nodiscard]] SuiteReport bite( std::uint64_t seed, std::size_t cases );
[[nodiscard]] SuiteReport congruence( std::uint64_t seed, std::size_t cases );

} // namespace deemed
