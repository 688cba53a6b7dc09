#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deemed/canonical.hpp"
#include "deemed/formula.hpp"

namespace deemed
{

enum class EventKind
{
    Agency,  // E_G objective
    Attempt, // Att_G objective
    Grant,   // manager brings about Dabl_G objective
    Revoke,  // manager brings about !Dabl_G objective
    Agree,   // manager and G agree on Task_G(objective; deadline)
};

[[nodiscard]] const char* to_string( EventKind k );
[[nodiscard]] EventKind event_kind_from_string( std::string_view s );

struct Event
{
    std::size_t t = 0;
    EventKind kind = EventKind::Agency;
    Group group;
    Formula objective = Formula::top();
    std::optional< Formula > deadline;
};

struct ValuationRecord
{
    std::size_t t = 0;
    std::set< std::string > props;
};

struct EngineFlags
{
    bool empty_group_excluded = false; // no situation confirms the empty group
    bool monotonic_conf = false;       // Conf_G f implies Conf_G' f for G ⊆ G'
    bool b6 = false;                   // every agency is also an attempt
    std::size_t agency_subset_cap = 8; // simultaneous agency records per instant
};

/// Header plus event and valuation records. Event ids are positions in
/// `events`.
struct EventLog
{
    Universe universe;
    std::vector< AgentId > agents;
    std::size_t horizon = 1;
    EngineFlags flags;
    std::vector< Event > events;
    std::vector< ValuationRecord > valuations;
};

/// JSON Lines: the first non-blank line is the header, the rest are events
/// (`"kind"` present) or valuations (`"props"` present). Throws FormatError.
[[nodiscard]] EventLog parse_event_log( std::string_view jsonl );
[[nodiscard]] std::string write_event_log( const EventLog& log );

/// One-line human description, e.g. `grant {s2} phi`.
[[nodiscard]] std::string describe( const Event& e );

} // namespace deemed
