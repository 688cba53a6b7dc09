#include <gtest/gtest.h>

#include "deemed/error.hpp"
#include "deemed/event_log.hpp"
#include "deemed/io.hpp"
#include "deemed/scenarios.hpp"
#include "deemed/syntax.hpp"

using namespace deemed;

namespace
{

const std::string header = R"({"universe":["p","q"],"agents":["b","a"],"horizon":4})";

EventLog parse( const std::string& body ) { return parse_event_log( header + "\n" + body ); }

} // namespace

TEST( EventLog, ParsesHeaderEventsAndValuations )
{
    auto log = parse( R"({"t":1,"kind":"grant","group":["a"],"objective":"p & q"}
{"t":2,"kind":"agree","group":["b","a"],"objective":"p","deadline":"q"}

{"t":3,"props":["q"]})" );
    EXPECT_EQ( log.universe.props(), ( std::vector< std::string >{ "p", "q" } ) );
    EXPECT_EQ( log.agents, ( std::vector< std::string >{ "a", "b" } ) );
    EXPECT_EQ( log.horizon, 4u );
    EXPECT_FALSE( log.flags.monotonic_conf );
    EXPECT_EQ( log.flags.agency_subset_cap, 8u );
    ASSERT_EQ( log.events.size(), 2u );
    EXPECT_EQ( log.events[ 0 ].kind, EventKind::Grant );
    EXPECT_EQ( log.events[ 0 ].objective, parse_static( "p & q" ) );
    EXPECT_FALSE( log.events[ 0 ].deadline );
    EXPECT_EQ( log.events[ 1 ].group, ( Group{ "a", "b" } ) );
    EXPECT_EQ( *log.events[ 1 ].deadline, parse_static( "q" ) );
    ASSERT_EQ( log.valuations.size(), 1u );
    EXPECT_EQ( log.valuations[ 0 ].props, ( std::set< std::string >{ "q" } ) );
}

TEST( EventLog, ReadsFlags )
{
    auto log = parse_event_log(
        R"({"universe":["p"],"agents":["a"],"horizon":2,"flags":{"monotonic_conf":true,"b6":true,"agency_subset_cap":3}})" );
    EXPECT_TRUE( log.flags.monotonic_conf );
    EXPECT_TRUE( log.flags.b6 );
    EXPECT_FALSE( log.flags.empty_group_excluded );
    EXPECT_EQ( log.flags.agency_subset_cap, 3u );
}

TEST( EventLog, RejectsMalformedInput )
{
    EXPECT_THROW( ( void )parse_event_log( "" ), FormatError );
    EXPECT_THROW( ( void )parse_event_log( "not json" ), FormatError );
    EXPECT_THROW( ( void )parse_event_log( R"({"universe":["p"],"agents":[],"horizon":0})" ), FormatError );
    EXPECT_THROW( ( void )parse_event_log( R"({"agents":[],"horizon":2})" ), FormatError );
    EXPECT_THROW( ( void )parse_event_log( R"({"universe":["p"],"agents":["a b"],"horizon":2})" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":4,"kind":"grant","group":["a"],"objective":"p"})" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":0,"kind":"boast","group":["a"],"objective":"p"})" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":0,"kind":"grant","group":["a"],"objective":"p &"})" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":0,"kind":"agree","group":["a"],"objective":"p"})" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":0,"kind":"grant","objective":"p"})" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":0})" ), FormatError );
    EXPECT_THROW( ( void )parse( "{\"t\":1,\"props\":[]}\n{\"t\":1,\"props\":[\"p\"]}" ), FormatError );
    EXPECT_THROW( ( void )parse( R"({"t":1,"props":["r"]})" ), OutOfUniverse );
}

TEST( EventLog, WriteThenParseRoundTrips )
{
    auto log = parse( R"({"t":0,"kind":"agency","group":["a"],"objective":"p | q"}
{"t":1,"kind":"attempt","group":[],"objective":"!p"}
{"t":2,"kind":"revoke","group":["b"],"objective":"q -> p"}
{"t":3,"kind":"agree","group":["a"],"objective":"q","deadline":"p & !q"}
{"t":0,"props":["p"]})" );
    log.flags.agency_subset_cap = 5;
    const auto text = write_event_log( log );
    const auto again = parse_event_log( text );
    EXPECT_EQ( write_event_log( again ), text );
    EXPECT_EQ( again.flags.agency_subset_cap, 5u );
    EXPECT_EQ( again.events.size(), 4u );
    EXPECT_EQ( again.events[ 3 ].deadline, log.events[ 3 ].deadline );
}

TEST( EventLog, DescribesEvents )
{
    auto log = parse( R"({"t":0,"kind":"grant","group":["a"],"objective":"p"}
{"t":1,"kind":"agree","group":["a","b"],"objective":"p","deadline":"q"})" );
    EXPECT_EQ( describe( log.events[ 0 ] ), "grant {a} p" );
    EXPECT_EQ( describe( log.events[ 1 ] ), "agree {a,b} p before q" );
}

TEST( EventLog, CorpusFilesMatchBundledScenarios )
{
    for ( const auto& name : scenario_names() )
    {
        const auto file = read_file( std::string{ DEEMED_DATA_DIR } + "/scenarios/" + name + ".jsonl" );
        EXPECT_EQ( write_event_log( parse_event_log( file ) ), write_event_log( parse_event_log( scenario_jsonl( name ) ) ) )
            << name;
    }
}
