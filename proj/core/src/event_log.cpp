#include "deemed/event_log.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deemed/error.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

using nlohmann::json;

const char* to_string( EventKind k )
{
    switch ( k )
    {
    case EventKind::Agency: return "agency";
    case EventKind::Attempt: return "attempt";
    case EventKind::Grant: return "grant";
    case EventKind::Revoke: return "revoke";
    case EventKind::Agree: return "agree";
    }
    return "?";
}

EventKind event_kind_from_string( std::string_view s )
{
    if ( s == "agency" ) return EventKind::Agency;
    if ( s == "attempt" ) return EventKind::Attempt;
    if ( s == "grant" ) return EventKind::Grant;
    if ( s == "revoke" ) return EventKind::Revoke;
    if ( s == "agree" ) return EventKind::Agree;
    throw FormatError{ "unknown event kind '" + std::string{ s } + "'" };
}

namespace
{

template < typename T >
T field( const json& j, const char* name, std::size_t line )
{
    if ( !j.contains( name ) )
        throw FormatError{ "line " + std::to_string( line ) + ": missing field '" + name + "'" };
    try
    {
        return j.at( name ).get< T >();
    }
    catch ( const json::exception& )
    {
        throw FormatError{ "line " + std::to_string( line ) + ": field '" + name + "' has the wrong type" };
    }
}

Formula parse_objective( const json& j, const char* name, std::size_t line )
{
    const auto text = field< std::string >( j, name, line );
    try
    {
        return parse_static( text );
    }
    catch ( const ParseError& e )
    {
        throw FormatError{ "line " + std::to_string( line ) + ": " + name + ": " + e.what() };
    }
}

} // namespace

EventLog parse_event_log( std::string_view jsonl )
{
    EventLog log;
    bool have_header = false;
    std::istringstream in{ std::string{ jsonl } };
    std::string text;
    std::size_t line = 0;
    std::set< std::size_t > valued;
    while ( std::getline( in, text ) )
    {
        ++line;
        if ( text.find_first_not_of( " \t\r" ) == std::string::npos )
            continue;
        json j;
        try
        {
            j = json::parse( text );
        }
        catch ( const json::parse_error& e )
        {
            throw FormatError{ "line " + std::to_string( line ) + ": " + e.what() };
        }
        if ( !j.is_object() )
            throw FormatError{ "line " + std::to_string( line ) + ": expected a JSON object" };

        if ( !have_header )
        {
            have_header = true;
            log.universe = Universe{ field< std::vector< std::string > >( j, "universe", line ) };
            log.agents = field< std::vector< std::string > >( j, "agents", line );
            for ( const auto& a : log.agents )
                if ( !is_valid_agent_name( a ) )
                    throw FormatError{ "line " + std::to_string( line ) + ": invalid agent name '" + a + "'" };
            std::sort( log.agents.begin(), log.agents.end() );
            log.agents.erase( std::unique( log.agents.begin(), log.agents.end() ), log.agents.end() );
            log.horizon = field< std::size_t >( j, "horizon", line );
            if ( log.horizon == 0 )
                throw FormatError{ "horizon must be at least 1" };
            if ( j.contains( "flags" ) )
            {
                const auto& f = j.at( "flags" );
                log.flags.empty_group_excluded = f.value( "empty_group_excluded", false );
                log.flags.monotonic_conf = f.value( "monotonic_conf", false );
                log.flags.b6 = f.value( "b6", false );
                log.flags.agency_subset_cap = f.value( "agency_subset_cap", std::size_t{ 8 } );
            }
            continue;
        }

        const auto t = field< std::size_t >( j, "t", line );
        if ( t >= log.horizon )
            throw FormatError{ "line " + std::to_string( line ) + ": instant " + std::to_string( t ) +
                               " is beyond the horizon" };
        if ( j.contains( "kind" ) )
        {
            Event e;
            e.t = t;
            e.kind = event_kind_from_string( field< std::string >( j, "kind", line ) );
            e.group = Group{ field< std::vector< std::string > >( j, "group", line ) };
            e.objective = parse_objective( j, "objective", line );
            if ( e.kind == EventKind::Agree )
                e.deadline = parse_objective( j, "deadline", line );
            log.events.push_back( std::move( e ) );
        }
        else if ( j.contains( "props" ) )
        {
            if ( !valued.insert( t ).second )
                throw FormatError{ "line " + std::to_string( line ) + ": second valuation for instant " +
                                   std::to_string( t ) };
            auto props = field< std::vector< std::string > >( j, "props", line );
            ValuationRecord v{ t, { props.begin(), props.end() } };
            for ( const auto& p : v.props )
                if ( !log.universe.index_of( p ) )
                    throw OutOfUniverse{ "line " + std::to_string( line ) + ": proposition '" + p +
                                         "' is not in the universe" };
            log.valuations.push_back( std::move( v ) );
        }
        else
            throw FormatError{ "line " + std::to_string( line ) + ": record is neither an event nor a valuation" };
    }
    if ( !have_header )
        throw FormatError{ "event log is empty" };
    return log;
}

std::string write_event_log( const EventLog& log )
{
    std::string out;
    json header{ { "universe", log.universe.props() },
                 { "agents", log.agents },
                 { "horizon", log.horizon },
                 { "flags",
                   { { "empty_group_excluded", log.flags.empty_group_excluded },
                     { "monotonic_conf", log.flags.monotonic_conf },
                     { "b6", log.flags.b6 } } } };
    if ( log.flags.agency_subset_cap != 8 )
        header[ "flags" ][ "agency_subset_cap" ] = log.flags.agency_subset_cap;
    out += header.dump() + "\n";
    for ( const auto& e : log.events )
    {
        json j{ { "t", e.t },
                { "kind", to_string( e.kind ) },
                { "group", e.group.members() },
                { "objective", print_static( e.objective ) } };
        if ( e.deadline )
            j[ "deadline" ] = print_static( *e.deadline );
        out += j.dump() + "\n";
    }
    for ( const auto& v : log.valuations )
        out += json{ { "t", v.t }, { "props", v.props } }.dump() + "\n";
    return out;
}

std::string describe( const Event& e )
{
    std::string out = std::string{ to_string( e.kind ) } + " " + e.group.str() + " " + print_static( e.objective );
    if ( e.deadline )
        out += " before " + print_static( *e.deadline );
    return out;
}

} // namespace deemed
