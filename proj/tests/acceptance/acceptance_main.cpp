// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "deemed/error.hpp"
#include "deemed/harness.hpp"
#include "deemed/io.hpp"
#include "deemed/scenarios.hpp"
#include "deemed/syntax.hpp"
#include "oracles.hpp"

using namespace deemed;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

double seconds_since( std::chrono::steady_clock::time_point start )
{
    return std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
}

std::string fmt_seconds( double s )
{
    std::ostringstream out;
    out.setf( std::ios::fixed );
    out.precision( 3 );
    out << s << "s";
    return out.str();
}

std::string first_difference( const std::string& got, const std::string& want )
{
    std::istringstream a{ got }, b{ want };
    std::string la, lb;
    for ( std::size_t line = 1;; ++line )
    {
        const bool ha = static_cast< bool >( std::getline( a, la ) );
        const bool hb = static_cast< bool >( std::getline( b, lb ) );
        if ( !ha && !hb )
            return "identical";
        if ( ha != hb || la != lb )
            return "line " + std::to_string( line ) + ": got '" + ( ha ? la : "<eof>" ) + "', want '" +
                   ( hb ? lb : "<eof>" ) + "'";
    }
}

Outcome golden( const std::string& name, double budget )
{
    const auto start = std::chrono::steady_clock::now();
    const auto text = replay( name ).text();
    const double took = seconds_since( start );
    const auto want = read_file( std::string{ DEEMED_GOLDEN_DIR } + "/" + name + ".txt" );
    if ( text != want )
        return { false, first_difference( text, want ) };
    if ( took >= budget )
        return { false, "took " + fmt_seconds( took ) };
    return { true, "golden match in " + fmt_seconds( took ) };
}

Outcome lifecycle_steps()
{
    auto g = golden( "lifecycle", 1.0 );
    if ( !g.pass )
        return g;
    const auto tr = replay( "lifecycle" );
    const char* cited[] = { "[lbda2]", "[b5, scr2]", "[sc1]", "[lbda1]", "[b7]", "[sc2]" };
    std::size_t step = 0;
    for ( const auto& l : tr.lines )
        if ( l.rfind( std::to_string( step + 1 ) + ". ", 0 ) == 0 )
        {
            if ( step == 6 || l.find( cited[ step ] ) == std::string::npos )
                return { false, "step " + std::to_string( step + 1 ) + " cites the wrong rule: " + l };
            ++step;
        }
    if ( step != 6 || tr.lines.back().find( "back to step 1" ) == std::string::npos )
        return { false, "expected six steps closing the cycle, found " + std::to_string( step ) };
    return { true, g.detail + ", six steps cite b5 scr2 sc1 lbda1 b7 sc2" };
}

Outcome suite( const std::function< SuiteReport() >& f, double budget )
{
    const auto start = std::chrono::steady_clock::now();
    const auto r = f();
    const double took = seconds_since( start );
    std::size_t checked = 0;
    for ( const auto& [ p, n ] : r.checks )
        checked += n;
    std::string detail = std::to_string( r.cases ) + " cases, " + std::to_string( checked ) + " instances, " +
                         std::to_string( r.counterexamples.size() ) + " counterexamples, " + fmt_seconds( took );
    if ( !r.ok() )
    {
        const auto& c = r.counterexamples.front();
        detail += "; first: " + c.property + " case=" + std::to_string( c.case_index ) + " seed=" +
                  std::to_string( c.seed ) + " " + c.instantiation;
    }
    if ( budget > 0 && took >= budget )
        return { false, detail + " (budget " + fmt_seconds( budget ) + ")" };
    return { r.ok(), detail };
}

Outcome oracle_equivalence( std::uint64_t seed )
{
    Rng rng{ seed };
    std::size_t temporal = 0, mismatches = 0;
    std::string first;
    while ( temporal < 1000 )
    {
        RandomTraceParams params;
        const auto tm = random_trace( rng.next(), params );
        std::vector< std::string > props;
        for ( const auto& [ p, x ] : tm.at( 0 ).model->prop_extensions() )
            props.push_back( p );
        if ( props.empty() )
            props.push_back( "p" );
        const FormulaShape shape{ props, tm.agents(), 2, true, true, true };
        const auto f = oracle::random_temporal( rng, shape, 3 );
        const auto t = rng.below( tm.length() );
        ++temporal;
        if ( eval_temporal( tm, t, f ) != oracle::holds_temporal( tm, t, f ) )
        {
            if ( mismatches++ == 0 )
                first = "temporal " + print_temporal( f ) + " at t=" + std::to_string( t );
        }
    }

    std::size_t statics = 0;
    for ( std::size_t i = 0; i < 1000; ++i )
    {
        RandomModelParams params;
        params.worlds = 1 + rng.below( 5 );
        params.agents = 1 + rng.below( 3 );
        params.props = 1 + rng.below( 3 );
        params.density = 0.15 + 0.1 * static_cast< double >( rng.below( 5 ) );
        const auto m = random_sc_model( rng.next(), params );
        std::vector< std::string > props{ "p", "q", "r" };
        props.resize( params.props );
        const FormulaShape shape{ props, m.agents(), 3, true, true, true };
        const auto f = random_static_formula( rng, shape );
        const auto w = rng.below( m.world_count() );
        ++statics;
        if ( eval_static( m, w, f ) != oracle::holds_static( m, w, f ) )
        {
            if ( mismatches++ == 0 )
                first = "static " + print_static( f ) + " at w" + std::to_string( w );
        }
    }
    std::string detail = std::to_string( temporal ) + " temporal and " + std::to_string( statics ) +
                         " static triples, " + std::to_string( mismatches ) + " mismatches";
    if ( mismatches )
        detail += "; first: " + first;
    return { mismatches == 0, detail };
}

} // namespace

int main()
{
    const std::uint64_t seed = default_suite_seed;
    struct Criterion
    {
        const char* name;
        std::function< Outcome() > run;
    };
    const Criterion criteria[] = {
        { "scenario reproduction (repository)", [] { return golden( "repository", 1.0 ); } },
        { "lifecycle reproduction", [] { return lifecycle_steps(); } },
        { "static soundness", [ & ] { return suite( [ & ] { return static_soundness( seed, 500 ); }, 10.0 ); } },
        { "temporal soundness", [ & ] { return suite( [ & ] { return temporal_soundness( seed, 500 ); }, 30.0 ); } },
        { "constraint/axiom equivalence", [ & ] { return suite( [ & ] { return axiom_agreement( seed, 200 ); }, 0 ); } },
        { "interdependence", [ & ] { return suite( [ & ] { return interdependence( seed, 500 ); }, 0 ); } },
        { "bite of the constraints", [ & ] { return suite( [ & ] { return bite( seed, 2000 ); }, 0 ); } },
        { "oracle equivalence", [ & ] { return oracle_equivalence( seed ); } },
        { "congruence end-to-end", [ & ] { return suite( [ & ] { return congruence( seed, 100 ); }, 0 ); } },
    };

    bool all = true;
    int index = 1;
    for ( const auto& c : criteria )
    {
        Outcome o;
        try
        {
            o = c.run();
        }
        catch ( const std::exception& e )
        {
            o = { false, std::string{ "exception: " } + e.what() };
        }
        all = all && o.pass;
        std::cout << ( o.pass ? "PASS" : "FAIL" ) << " " << index++ << " " << c.name << ": " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
