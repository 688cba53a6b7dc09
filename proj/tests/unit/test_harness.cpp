#include <gtest/gtest.h>

#include <algorithm>

#include "deemed/engine.hpp"
#include "deemed/error.hpp"
#include "deemed/harness.hpp"
#include "deemed/io.hpp"
#include "deemed/scenarios.hpp"
#include "deemed/syntax.hpp"
#include "oracles.hpp"

using namespace deemed;

namespace
{

const std::string data_dir = DEEMED_DATA_DIR;

bool has_property( const SuiteReport& r, const std::string& p )
{
    return std::any_of( r.counterexamples.begin(), r.counterexamples.end(),
                        [ & ]( const Counterexample& c ) { return c.property == p; } );
}

std::array< TemporalFormula, 4 > atoms()
{
    return { TemporalFormula::mono( Formula::prop( "p" ) ), TemporalFormula::mono( Formula::prop( "q" ) ),
             TemporalFormula::mono( Formula::prop( "r" ) ), TemporalFormula::mono( Formula::prop( "s" ) ) };
}

} // namespace

TEST( Harness, ReportsAreDeterministic )
{
    EXPECT_EQ( static_soundness( 5, 20 ).to_json().dump(), static_soundness( 5, 20 ).to_json().dump() );
    EXPECT_EQ( temporal_soundness( 5, 10 ).to_json().dump(), temporal_soundness( 5, 10 ).to_json().dump() );
    EXPECT_EQ( congruence( 5, 10 ).text(), congruence( 5, 10 ).text() );
    EXPECT_NE( static_soundness( 5, 20 ).to_json().dump(), static_soundness( 6, 20 ).to_json().dump() );
}

TEST( Harness, SmallSuitesPass )
{
    for ( const auto& r : { static_soundness( default_suite_seed, 30 ), temporal_soundness( default_suite_seed, 20 ),
                            axiom_agreement( default_suite_seed, 15 ), interdependence( default_suite_seed, 30 ),
                            bite( default_suite_seed, 50 ), congruence( default_suite_seed, 20 ) } )
    {
        EXPECT_TRUE( r.ok() ) << r.text();
        EXPECT_FALSE( r.checks.empty() ) << r.suite;
    }
}

TEST( Harness, InvalidModelYieldsACounterexample )
{
    const std::vector< SCModel > models{ load_model( data_dir + "/examples/bad_conf.json", true ) };
    const auto r = static_soundness( models, 1 );
    EXPECT_FALSE( r.ok() );
    EXPECT_TRUE( has_property( r, "sc1" ) ) << r.text();
    const auto j = r.to_json();
    EXPECT_FALSE( j.at( "counterexamples" ).empty() );

    const std::vector< SCModel > disc{ load_model( data_dir + "/examples/bad_disc.json", true ) };
    EXPECT_TRUE( has_property( static_soundness( disc, 1 ), "sc2" ) );
}

TEST( Harness, ValidCorpusModelsPass )
{
    const std::vector< SCModel > models{ load_model( data_dir + "/examples/illustration.json" ),
                                         load_model( data_dir + "/examples/non_closure.json" ),
                                         load_model( data_dir + "/examples/agency.json" ) };
    const auto r = static_soundness( models, 1 );
    EXPECT_TRUE( r.ok() ) << r.text();
}

TEST( Harness, RandomLogsAreAcceptedByTheEngine )
{
    for ( std::uint64_t i = 0; i < 100; ++i )
    {
        const auto log = random_event_log( derive_seed( 8, i ) );
        EXPECT_NO_THROW( ( void )run( log ) ) << write_event_log( log );
        EXPECT_LE( log.horizon, 6u );
        EXPECT_LE( log.agents.size(), 3u );
    }
    EXPECT_EQ( write_event_log( random_event_log( 3 ) ), write_event_log( random_event_log( 3 ) ) );
}

TEST( Harness, RewrittenObjectivesAreEquivalent )
{
    const auto log = random_event_log( 21 );
    const auto rw = rewrite_objectives( log, 4 );
    ASSERT_EQ( rw.events.size(), log.events.size() );
    for ( std::size_t i = 0; i < log.events.size(); ++i )
        EXPECT_TRUE( oracle::brute_equivalent( log.events[ i ].objective, rw.events[ i ].objective,
                                               log.universe.props() ) );
    const auto p = parse_static( "p | q" );
    const auto q = parse_static( "!(!p & !q)" );
    EXPECT_TRUE( equivalent( p, q, Universe{ { "p", "q" } } ) );
    EXPECT_TRUE( oracle::brute_equivalent( p, q, { "p", "q" } ) );
}

TEST( Harness, RandomTracesShareACanonicalFrame )
{
    for ( std::uint64_t i = 0; i < 30; ++i )
    {
        const auto tm = random_trace( i );
        EXPECT_TRUE( tm.shared_frame() );
        const auto n = tm.at( 0 ).model->world_count();
        EXPECT_TRUE( n == 1 || n == 2 || n == 4 ) << n;
    }
}

TEST( Harness, CorruptionChangesTheTrace )
{
    std::size_t changed = 0;
    for ( std::uint64_t i = 0; i < 20; ++i )
    {
        const auto tm = to_trace_model( run( random_event_log( i ) ) );
        const auto bad = corrupt_trace( tm, i );
        ASSERT_EQ( bad.length(), tm.length() );
        changed += trace_to_json( bad ) != trace_to_json( tm );
    }
    EXPECT_GT( changed, 10u );
}

TEST( Harness, ShrinkKeepsTheFailure )
{
    auto log = parse_event_log( scenario_jsonl( "repository" ) );
    auto fails = []( const EventLog& l ) {
        return std::any_of( l.events.begin(), l.events.end(),
                            []( const Event& e ) { return e.kind == EventKind::Agree; } );
    };
    const auto small = shrink_log( log, fails );
    EXPECT_TRUE( fails( small ) );
    EXPECT_EQ( small.events.size(), 1u );
    EXPECT_EQ( small.horizon, 2u );
}

TEST( Harness, LtlAxiomInstanceMatchesBruteForce )
{
    // ltl11 instantiated over a small trace, checked against the oracle.
    const auto v = atoms();
    auto tm = random_trace( 77 );
    std::array< TemporalFormula, 4 > leaves{ TemporalFormula::mono( parse_static( "Dabl{a} T" ) ),
                                             TemporalFormula::mono( parse_static( "Conf{a} T" ) ),
                                             TemporalFormula::mono( parse_static( "Disc{} T" ) ), TemporalFormula::top() };
    for ( int k = 1; k <= 12; ++k )
    {
        const auto f = ltl_axiom( k, leaves );
        for ( std::size_t t = 0; t < tm.length(); ++t )
        {
            EXPECT_TRUE( oracle::holds_temporal( tm, t, f ) ) << "ltl" << k << " t=" << t;
            EXPECT_EQ( eval_temporal( tm, t, f ), oracle::holds_temporal( tm, t, f ) );
        }
    }
    EXPECT_EQ( print_temporal( ltl8_as_printed( v ) ), "(!(q S p) | ((q & (q S p)) U p))" );
}

TEST( Harness, AbilityWithConfirmationOnlyAtTwo )
{
    // Dabl at 2 with Conf only at 2 satisfies lbda3 there.
    const auto log = parse_event_log( R"({"universe":["p"],"agents":["a"],"horizon":4}
{"t":2,"kind":"grant","group":["a"],"objective":"p"})" );
    const auto tm = to_trace_model( run( log ) );
    const auto v = axiom_check( tm, DAAxiom::lbda3, Group{ "a" }, parse_static( "p" ) );
    EXPECT_EQ( v, ( std::vector< bool >{ true, true, true, true } ) );
}

TEST( Harness, ReplayChecks )
{
    EXPECT_THROW( ( void )replay( "nonesuch" ), Error );
    auto log = parse_event_log( scenario_jsonl( "repository" ) );
    log.valuations.clear();
    EXPECT_THROW( ( void )replay( "repository", log ), GoldenMismatch );
    auto life = parse_event_log( scenario_jsonl( "lifecycle" ) );
    life.events.pop_back();
    EXPECT_THROW( ( void )replay( "lifecycle", life ), GoldenMismatch );
    EXPECT_NO_THROW( ( void )replay( "lifecycle" ) );
}
