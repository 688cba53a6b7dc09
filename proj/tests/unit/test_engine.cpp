#include <gtest/gtest.h>

#include <algorithm>

#include "deemed/canonical.hpp"
#include "deemed/engine.hpp"
#include "deemed/error.hpp"
#include "deemed/scenarios.hpp"
#include "deemed/syntax.hpp"

using namespace deemed;

namespace
{

EventLog log_of( const std::string& header, const std::string& body )
{
    return parse_event_log( header + "\n" + body );
}

const std::string pq_header = R"({"universe":["d","p","q"],"agents":["a","b"],"horizon":6})";

EventLog pq( const std::string& body ) { return log_of( pq_header, body ); }

bool holds( const DerivedTrace& dt, const char* fact, std::size_t t )
{
    return query( dt, parse_temporal( fact ), t );
}

const Fact* find( const DerivedTrace& dt, const FactTable FactSet::*table, std::size_t t, const Group& g,
                  const char* objective )
{
    const auto& facts = dt.instants.at( t ).facts.*table;
    auto it = facts.find( FactId{ g, canonical_key( parse_static( objective ), dt.log.universe ) } );
    return it == facts.end() ? nullptr : &it->second;
}

template < typename E >
E thrown( const EventLog& log )
{
    try
    {
        ( void )run( log );
    }
    catch ( const E& e )
    {
        return e;
    }
    ADD_FAILURE() << "expected an exception";
    throw std::logic_error( "no exception" );
}

bool cites( const std::vector< std::string >& provenance, const std::string& rule )
{
    return std::any_of( provenance.begin(), provenance.end(),
                        [ & ]( const std::string& p ) { return p.rfind( rule, 0 ) == 0; } );
}

} // namespace

TEST( Engine, RepositoryDerivation )
{
    const auto dt = run( parse_event_log( scenario_jsonl( "repository" ) ) );
    ASSERT_EQ( dt.instants.size(), 6u );
    for ( std::size_t t = 0; t < 5; ++t )
        EXPECT_TRUE( holds( dt, "Dabl{s2} phi", t ) ) << t;
    EXPECT_FALSE( holds( dt, "Dabl{s2} phi", 5 ) );
    EXPECT_TRUE( holds( dt, "Conf{s2} phi", 0 ) );
    EXPECT_FALSE( holds( dt, "Conf{s2} phi", 1 ) );
    EXPECT_TRUE( holds( dt, "Disc{s2} phi", 5 ) );
    EXPECT_TRUE( holds( dt, "Agree{s2}(phi; deadline)", 1 ) );
    EXPECT_FALSE( holds( dt, "Agree{s2}(phi; deadline)", 2 ) );
    for ( std::size_t t = 1; t < 5; ++t )
        EXPECT_TRUE( holds( dt, "Task{s2}(phi; deadline)", t ) ) << t;
    EXPECT_FALSE( holds( dt, "Task{s2}(phi; deadline)", 0 ) );
    EXPECT_FALSE( holds( dt, "Task{s2}(phi; deadline)", 5 ) );
    EXPECT_FALSE( holds( dt, "Dabl{s1} phi", 2 ) );
    EXPECT_FALSE( holds( dt, "Dabl{s2} deadline", 2 ) );

    ASSERT_EQ( dt.tasks.size(), 1u );
    EXPECT_EQ( dt.tasks[ 0 ].status, TaskStatus::Expired );
    EXPECT_EQ( dt.tasks[ 0 ].closed_at, 5u );

    const auto* disc = find( dt, &FactSet::disc, 5, Group{ "s2" }, "phi" );
    ASSERT_NE( disc, nullptr );
    ASSERT_EQ( disc->why.size(), 1u );
    EXPECT_EQ( disc->why[ 0 ].rule, "t7" );
    EXPECT_EQ( disc->why[ 0 ].events, ( std::vector< std::size_t >{ 1 } ) );
    EXPECT_EQ( disc->why[ 0 ].from, 1u );

    const auto* dabl = find( dt, &FactSet::dabl, 4, Group{ "s2" }, "phi" );
    ASSERT_NE( dabl, nullptr );
    EXPECT_EQ( dabl->why[ 0 ].rule, "lbda1" );
    EXPECT_EQ( dabl->why[ 0 ].from, 0u );
}

TEST( Engine, RepositoryTemporalQueries )
{
    const auto dt = run( parse_event_log( scenario_jsonl( "repository" ) ) );
    EXPECT_TRUE( holds( dt, "Dabl{s2} phi W Disc{s2} phi", 0 ) );
    EXPECT_TRUE( holds( dt, "Dabl{s2} phi U Disc{s2} phi", 0 ) );
    EXPECT_TRUE( holds( dt, "!Dabl{s2} phi W Conf{s2} phi", 5 ) );
    EXPECT_TRUE( holds( dt, "Dabl{s2} phi S Conf{s2} phi", 4 ) );
    EXPECT_TRUE( holds( dt, "F Disc{s2} phi", 1 ) );
    EXPECT_FALSE( holds( dt, "F Disc{s2} phi", 5 ) );
    EXPECT_THROW( ( void )holds( dt, "Dabl{s2} phi", 6 ), InstantOutOfRange );
}

TEST( Engine, LifecycleDerivation )
{
    const auto dt = run( parse_event_log( scenario_jsonl( "lifecycle" ) ) );
    const Group ab{ "a", "b" };
    EXPECT_FALSE( holds( dt, "Dabl{a} p1", 1 ) );
    EXPECT_TRUE( holds( dt, "E{a} p1 & E{b} p2", 2 ) );
    EXPECT_TRUE( holds( dt, "Conf{a,b} (p1 & p2)", 2 ) );
    EXPECT_TRUE( holds( dt, "Conf{a} p1 & Conf{b} p2", 2 ) );
    EXPECT_FALSE( holds( dt, "Conf{a,b} p1", 2 ) );
    for ( std::size_t t = 2; t < 5; ++t )
        EXPECT_TRUE( holds( dt, "Dabl{a,b} (p2 & p1)", t ) ) << t;
    EXPECT_TRUE( holds( dt, "Att{a,b} (p1 & p2)", 5 ) );
    EXPECT_TRUE( holds( dt, "Disc{a,b} (p1 & p2)", 5 ) );
    EXPECT_FALSE( holds( dt, "Dabl{a,b} (p1 & p2)", 5 ) );
    EXPECT_FALSE( holds( dt, "Dabl{a,b} (p1 & p2)", 7 ) );
    EXPECT_TRUE( holds( dt, "Dabl{a} p1 & Dabl{b} p2", 7 ) );

    const auto* joint = find( dt, &FactSet::conf, 2, ab, "p1 & p2" );
    ASSERT_NE( joint, nullptr );
    EXPECT_EQ( joint->why[ 0 ].rule, "b5" );
    EXPECT_EQ( joint->why[ 0 ].events, ( std::vector< std::size_t >{ 0, 1 } ) );
    const auto* single = find( dt, &FactSet::conf, 2, Group{ "a" }, "p1" );
    ASSERT_NE( single, nullptr );
    EXPECT_EQ( single->why[ 0 ].rule, "b4" );
    const auto* failed = find( dt, &FactSet::disc, 5, ab, "p1 & p2" );
    ASSERT_NE( failed, nullptr );
    EXPECT_EQ( failed->why[ 0 ].rule, "b7" );
}

TEST( Engine, SimultaneousGrantAndRevokeIsInconsistent )
{
    auto e = thrown< InconsistencyError >( pq( R"({"t":3,"kind":"grant","group":["a"],"objective":"p"}
{"t":3,"kind":"revoke","group":["a"],"objective":"!!p"})" ) );
    EXPECT_EQ( e.instant(), 3u );
    EXPECT_TRUE( cites( e.provenance(), "t1 #0" ) );
    EXPECT_TRUE( cites( e.provenance(), "t2 #1" ) );
    EXPECT_NE( std::string{ e.what() }.find( "t=3" ), std::string::npos );
}

TEST( Engine, GrantAndRevokeAtDifferentInstantsAreFine )
{
    auto dt = run( pq( R"({"t":1,"kind":"grant","group":["a"],"objective":"p"}
{"t":3,"kind":"revoke","group":["a"],"objective":"p"})" ) );
    EXPECT_EQ( query_all( dt, parse_temporal( "Dabl{a} p" ) ),
               ( std::vector< bool >{ false, true, true, false, false, false } ) );
    EXPECT_EQ( find( dt, &FactSet::disc, 3, Group{ "a" }, "p" )->why[ 0 ].rule, "t2" );
}

TEST( Engine, FailedAttemptAgainstAGrantIsInconsistent )
{
    auto e = thrown< InconsistencyError >( pq( R"({"t":2,"kind":"grant","group":["a"],"objective":"q"}
{"t":2,"kind":"attempt","group":["a"],"objective":"q"})" ) );
    EXPECT_TRUE( cites( e.provenance(), "t1" ) );
    EXPECT_TRUE( cites( e.provenance(), "b7" ) );
}

TEST( Engine, TaskWhoseDeadlineAlreadyHoldsIsAParadox )
{
    auto e = thrown< TaskParadox >( pq( R"({"t":2,"kind":"agree","group":["a"],"objective":"p","deadline":"d"}
{"t":2,"props":["d"]})" ) );
    EXPECT_EQ( e.instant(), 2u );
    EXPECT_TRUE( cites( e.provenance(), "t3 #0" ) );
}

TEST( Engine, TaskCompletedWhenAgreedIsAParadox )
{
    auto e = thrown< TaskParadox >( pq( R"({"t":2,"kind":"agree","group":["a"],"objective":"p","deadline":"d"}
{"t":2,"kind":"agency","group":["a"],"objective":"p"}
{"t":2,"props":["p"]})" ) );
    EXPECT_TRUE( cites( e.provenance(), "t3" ) );
}

TEST( Engine, TaskCompletedBeforeTheDeadline )
{
    auto dt = run( pq( R"({"t":1,"kind":"agree","group":["a"],"objective":"p","deadline":"d"}
{"t":3,"kind":"agency","group":["a"],"objective":"p"}
{"t":3,"props":["p"]}
{"t":4,"props":["d"]})" ) );
    ASSERT_EQ( dt.tasks.size(), 1u );
    EXPECT_EQ( dt.tasks[ 0 ].status, TaskStatus::Completed );
    EXPECT_EQ( dt.tasks[ 0 ].closed_at, 3u );
    EXPECT_EQ( dt.tasks[ 0 ].closing_event, 1u );
    EXPECT_FALSE( holds( dt, "Disc{a} p", 4 ) );
    EXPECT_TRUE( holds( dt, "Dabl{a} p", 5 ) );
    EXPECT_TRUE( holds( dt, "Task{a}(p; d)", 2 ) );
    EXPECT_FALSE( holds( dt, "Task{a}(p; d)", 3 ) );
}

TEST( Engine, ExpiryDisconfirmsOnlyTheAgreeingGroup )
{
    auto dt = run( pq( R"({"t":0,"kind":"grant","group":["a"],"objective":"p"}
{"t":0,"kind":"grant","group":["a","b"],"objective":"p"}
{"t":1,"kind":"agree","group":["a"],"objective":"p","deadline":"d"}
{"t":3,"props":["d"]})" ) );
    EXPECT_TRUE( holds( dt, "Disc{a} p", 3 ) );
    EXPECT_FALSE( holds( dt, "Disc{a,b} p", 3 ) );
    EXPECT_TRUE( holds( dt, "Dabl{a,b} p", 5 ) );
    EXPECT_FALSE( holds( dt, "Dabl{a} p", 3 ) );
}

TEST( Engine, AgreementsCanBeRenewedAfterExpiry )
{
    auto dt = run( pq( R"({"t":0,"kind":"agree","group":["a"],"objective":"p","deadline":"d"}
{"t":3,"kind":"agree","group":["a"],"objective":"p","deadline":"d"}
{"t":2,"props":["d"]}
{"t":5,"props":["d"]})" ) );
    ASSERT_EQ( dt.tasks.size(), 2u );
    EXPECT_EQ( dt.tasks[ 0 ].closed_at, 2u );
    EXPECT_EQ( dt.tasks[ 1 ].agreed_at, 3u );
    EXPECT_EQ( dt.tasks[ 1 ].closed_at, 5u );
    EXPECT_TRUE( holds( dt, "Disc{a} p", 2 ) );
    EXPECT_FALSE( holds( dt, "Task{a}(p; d)", 2 ) );
    EXPECT_TRUE( holds( dt, "Task{a}(p; d)", 4 ) );
    EXPECT_TRUE( holds( dt, "Disc{a} p", 5 ) );
}

TEST( Engine, AgencyMustBeContingentAndTrue )
{
    auto b1 = thrown< AgencyContradiction >( pq( R"({"t":1,"kind":"agency","group":["a"],"objective":"p | !p"})" ) );
    EXPECT_TRUE( cites( b1.provenance(), "b1" ) );
    auto b2 = thrown< AgencyContradiction >( pq( R"({"t":1,"kind":"agency","group":["a"],"objective":"p"})" ) );
    EXPECT_TRUE( cites( b2.provenance(), "b2" ) );
    EXPECT_EQ( b2.instant(), 1u );
}

TEST( Engine, InputErrors )
{
    EXPECT_THROW( ( void )run( pq( R"({"t":1,"kind":"grant","group":["z"],"objective":"p"})" ) ), UnknownAgent );
    EXPECT_THROW( ( void )run( pq( R"({"t":1,"kind":"grant","group":["a"],"objective":"Dabl{a} p"})" ) ),
                  NotPropositional );
    EXPECT_THROW( ( void )run( pq( R"({"t":1,"kind":"grant","group":["a"],"objective":"r"})" ) ), OutOfUniverse );
    auto log = pq( "" );
    log.events.push_back( Event{ 9, EventKind::Grant, Group{ "a" }, parse_static( "p" ), {} } );
    EXPECT_THROW( ( void )run( log ), InstantOutOfRange );
}

TEST( Engine, AgencySubsetCap )
{
    const std::string header = R"({"universe":["p","q","r"],"agents":["a","b","c"],"horizon":2,"flags":{"agency_subset_cap":2}})";
    const std::string body = R"({"t":0,"kind":"agency","group":["a"],"objective":"p"}
{"t":0,"kind":"agency","group":["b"],"objective":"q"}
{"t":0,"kind":"agency","group":["c"],"objective":"r"}
{"t":0,"props":["p","q","r"]})";
    EXPECT_THROW( ( void )run( log_of( header, body ) ), CapExceeded );
    auto log = log_of( header, body );
    log.flags.agency_subset_cap = 3;
    auto dt = run( log );
    EXPECT_TRUE( holds( dt, "Conf{a,b,c} (p & q & r)", 0 ) );
    EXPECT_TRUE( holds( dt, "Conf{a,c} (p & r)", 0 ) );
    EXPECT_EQ( dt.instants[ 0 ].facts.conf.size(), 7u );
}

TEST( Engine, BringsIsClosedUnderIntersection )
{
    auto dt = run( pq( R"({"t":0,"kind":"agency","group":["a"],"objective":"p"}
{"t":0,"kind":"agency","group":["a"],"objective":"q"}
{"t":0,"props":["p","q"]})" ) );
    const auto* both = find( dt, &FactSet::brings, 0, Group{ "a" }, "q & p" );
    ASSERT_NE( both, nullptr );
    EXPECT_EQ( both->why[ 0 ].rule, "b3" );
    EXPECT_EQ( both->why[ 0 ].events, ( std::vector< std::size_t >{ 0, 1 } ) );
    // An attempt matching the closure is not a failure.
    auto ok = run( pq( R"({"t":0,"kind":"agency","group":["a"],"objective":"p"}
{"t":0,"kind":"agency","group":["a"],"objective":"q"}
{"t":0,"kind":"attempt","group":["a"],"objective":"p & q"}
{"t":0,"props":["p","q"]})" ) );
    EXPECT_FALSE( holds( ok, "Disc{a} (p & q)", 0 ) );
}

TEST( Engine, EmptyGroupFlag )
{
    const std::string body = R"({"t":0,"kind":"grant","group":[],"objective":"p"})";
    EXPECT_TRUE( holds( run( pq( body ) ), "Dabl{} p", 3 ) );
    auto log = pq( body );
    log.flags.empty_group_excluded = true;
    auto dt = run( log );
    EXPECT_FALSE( holds( dt, "Conf{} p", 0 ) );
    EXPECT_FALSE( holds( dt, "Dabl{} p", 3 ) );
}

TEST( Engine, MonotonicConfFlag )
{
    const std::string body = R"({"t":0,"kind":"grant","group":["a"],"objective":"p"})";
    EXPECT_FALSE( holds( run( pq( body ) ), "Conf{a,b} p", 0 ) );
    auto log = pq( body );
    log.flags.monotonic_conf = true;
    auto dt = run( log );
    EXPECT_TRUE( holds( dt, "Conf{a,b} p", 0 ) );
    EXPECT_FALSE( holds( dt, "Conf{b} p", 0 ) );
    EXPECT_EQ( find( dt, &FactSet::conf, 0, Group{ "a", "b" }, "p" )->why[ 0 ].rule, "monotonic" );
}

TEST( Engine, AgencyIsAnAttemptUnderB6 )
{
    const std::string body = R"({"t":0,"kind":"agency","group":["a"],"objective":"p"}
{"t":0,"props":["p"]})";
    EXPECT_FALSE( holds( run( pq( body ) ), "Att{a} p", 0 ) );
    auto log = pq( body );
    log.flags.b6 = true;
    auto dt = run( log );
    EXPECT_TRUE( holds( dt, "Att{a} p", 0 ) );
    EXPECT_FALSE( holds( dt, "Disc{a} p", 0 ) );
    EXPECT_EQ( find( dt, &FactSet::attempts, 0, Group{ "a" }, "p" )->why[ 0 ].rule, "b6" );
}

TEST( Engine, RepeatedGrantRefreshesTheConfirmation )
{
    auto dt = run( pq( R"({"t":0,"kind":"grant","group":["a"],"objective":"p"}
{"t":3,"kind":"grant","group":["a"],"objective":"p"})" ) );
    EXPECT_EQ( find( dt, &FactSet::dabl, 2, Group{ "a" }, "p" )->why[ 0 ].from, 0u );
    EXPECT_EQ( find( dt, &FactSet::dabl, 4, Group{ "a" }, "p" )->why[ 0 ].from, 3u );
    EXPECT_EQ( explain( dt, parse_static( "Dabl{a} p" ), 5 ).confirmed_at, 3u );
}

TEST( Engine, EmptyLogHasNoFacts )
{
    auto dt = run( log_of( R"({"universe":["p"],"agents":["a"],"horizon":3})", "" ) );
    ASSERT_EQ( dt.instants.size(), 3u );
    for ( const auto& st : dt.instants )
    {
        EXPECT_TRUE( st.facts.conf.empty() && st.facts.disc.empty() && st.facts.dabl.empty() );
        EXPECT_TRUE( st.facts.brings.empty() && st.facts.attempts.empty() && st.active_tasks.empty() );
    }
    EXPECT_TRUE( query_all( dt, parse_temporal( "G !Dabl{a} p" ) )[ 0 ] );
}

TEST( Engine, DerivedTracesSatisfyTheAbilityConstraints )
{
    for ( const auto& name : scenario_names() )
    {
        const auto tm = to_trace_model( run( parse_event_log( scenario_jsonl( name ) ) ) );
        EXPECT_TRUE( validate_da_model( tm ).ok() ) << name;
    }
}

TEST( Engine, ExplainsAbilityThroughPersistence )
{
    const auto dt = run( parse_event_log( scenario_jsonl( "repository" ) ) );
    const auto ex = explain( dt, parse_static( "Dabl{s2} phi" ), 3 );
    EXPECT_EQ( ex.confirmed_at, 0u );
    ASSERT_EQ( ex.grounds.size(), 1u );
    EXPECT_EQ( ex.grounds[ 0 ].rule, "t1" );
    EXPECT_EQ( ex.lines, ( std::vector< std::string >{
                             "Dabl{s2} phi holds at t=3",
                             "  confirmed at t=0",
                             "    t1: grant {s2} phi (#0 at t=0)",
                             "  sc1: Conf implies Dabl at t=0",
                             "  lbda1: persists over t=1..3 with no disconfirmation",
                             "  lbda3: grounded by Dabl S Conf since t=0",
                         } ) );
}

TEST( Engine, ExplainsDisconfirmation )
{
    const auto dt = run( parse_event_log( scenario_jsonl( "repository" ) ) );
    const auto ex = explain( dt, parse_static( "Disc{s2} phi" ), 5 );
    ASSERT_EQ( ex.lines.size(), 2u );
    EXPECT_EQ( ex.lines[ 1 ], "  t7: agree {s2} phi before deadline (#1 at t=1); deadline reached (deadline) with no "
                              "completing agency at t=5" );
    EXPECT_THROW( ( void )explain( dt, parse_static( "Disc{s2} phi" ), 4 ), UnknownFact );
    EXPECT_THROW( ( void )explain( dt, parse_static( "E{s2} phi" ), 4 ), UnknownFact );
    EXPECT_THROW( ( void )explain( dt, parse_static( "Dabl{s2} phi" ), 6 ), InstantOutOfRange );
}

TEST( Engine, DescribeListsTaskOutcomes )
{
    const auto text = describe( run( parse_event_log( scenario_jsonl( "repository" ) ) ) );
    EXPECT_NE( text.find( "task 0 {s2} phi: expired at t=5" ), std::string::npos );
    EXPECT_NE( text.find( "Task{s2}(phi; deadline)  [agreed t=1]" ), std::string::npos );
}
