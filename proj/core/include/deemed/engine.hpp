#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deemed/canonical.hpp"
#include "deemed/event_log.hpp"
#include "deemed/formula.hpp"
#include "deemed/temporal_model.hpp"

namespace deemed
{

/// Identity of a derived fact: objectives are compared up to equivalence.
struct FactId
{
    Group group;
    CanonicalKey key;

    friend bool operator==( const FactId&, const FactId& ) = default;
    friend auto operator<=>( const FactId&, const FactId& ) = default;
};

/// One ground for a fact: the rule applied, the events involved and, for
/// persistence, the instant the fact was carried over from.
struct Justification
{
    std::string rule;
    std::vector< std::size_t > events;
    std::optional< std::size_t > from;
    std::string note;

    friend bool operator==( const Justification&, const Justification& ) = default;
};

struct Fact
{
    Group group;
    CanonicalKey key;
    Formula objective = Formula::top(); // representative from the log
    std::vector< Justification > why;
};

using FactTable = std::map< FactId, Fact >;

struct FactSet
{
    FactTable conf;
    FactTable disc;
    FactTable dabl;
    FactTable brings;   // closed under intersection per group
    FactTable attempts;
};

enum class TaskStatus
{
    Active,
    Completed,
    Expired,
};

[[nodiscard]] const char* to_string( TaskStatus s );

struct TaskRecord
{
    Group group;
    Formula objective = Formula::top();
    CanonicalKey objective_key;
    Formula deadline = Formula::bottom();
    CanonicalKey deadline_key;
    std::size_t agreed_at = 0;
    std::size_t event = 0;
    TaskStatus status = TaskStatus::Active;
    std::optional< std::size_t > closed_at;
    std::optional< std::size_t > closing_event; // completing agency
};

struct InstantState
{
    std::size_t t = 0;
    std::set< std::string > valuation;
    std::size_t valuation_index = 0;
    FactSet facts;
    std::vector< std::size_t > active_tasks; // indices into DerivedTrace::tasks
    std::vector< std::size_t > agreements;   // tasks agreed at this instant
};

struct DerivedTrace
{
    EventLog log;
    std::vector< InstantState > instants;
    std::vector< TaskRecord > tasks;
};

/// Grounds an event log into per-instant facts. Throws InconsistencyError,
/// TaskParadox, AgencyContradiction, UnknownAgent, NotPropositional,
/// OutOfUniverse or CapExceeded.
[[nodiscard]] DerivedTrace run( const EventLog& log );

/// Canonical embedding: one world per valuation of the universe, every
/// neighborhood placed at the instant's actual world.
[[nodiscard]] TraceModel to_trace_model( const DerivedTrace& dt );

[[nodiscard]] bool query( const DerivedTrace& dt, const TemporalFormula& f, std::size_t t );
[[nodiscard]] std::vector< bool > query_all( const DerivedTrace& dt, const TemporalFormula& f );

struct Explanation
{
    StaticOp op = StaticOp::Dabl;
    Group group;
    Formula objective = Formula::top();
    std::size_t t = 0;
    std::vector< Justification > grounds;     // at `t` for Conf/Disc, at `confirmed_at` for Dabl
    std::optional< std::size_t > confirmed_at; // Dabl only
    std::vector< std::string > lines;
};

/// Why `fact` (Dabl/Conf/Disc over a propositional objective) holds at `t`.
/// Throws UnknownFact if it does not hold.
[[nodiscard]] Explanation explain( const DerivedTrace& dt, const Formula& fact, std::size_t t );

/// Instant-by-instant listing of the derived facts.
[[nodiscard]] std::string describe( const DerivedTrace& dt );

} // namespace deemed
