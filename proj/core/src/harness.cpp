#include "deemed/harness.hpp"

#include <algorithm>
#include <sstream>

#include "deemed/error.hpp"
#include "deemed/io.hpp"
#include "deemed/random.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

using nlohmann::json;

json SuiteReport::to_json() const
{
    json ces = json::array();
    for ( const auto& c : counterexamples )
    {
        json j{ { "property", c.property },
                { "seed", c.seed },
                { "case", c.case_index },
                { "instantiation", c.instantiation },
                { "input", c.input } };
        if ( c.instant )
            j[ "instant" ] = *c.instant;
        ces.push_back( std::move( j ) );
    }
    return json{ { "suite", suite },         { "seed", seed },       { "cases", cases },
                 { "ok", ok() },             { "checks", checks },   { "counterexamples", ces },
                 { "observations", observations } };
}

std::string SuiteReport::text() const
{
    std::ostringstream out;
    out << "suite " << suite << " seed=" << seed << " cases=" << cases << ": "
        << ( ok() ? "ok" : "FAILED" ) << " (" << counterexamples.size() << " counterexamples)\n";
    for ( const auto& [ property, n ] : checks )
        out << "  " << property << ": " << n << " checked\n";
    for ( const auto& c : counterexamples )
    {
        out << "  counterexample " << c.property << " case=" << c.case_index << " seed=" << c.seed;
        if ( c.instant )
            out << " t=" << *c.instant;
        if ( !c.instantiation.empty() )
            out << " " << c.instantiation;
        out << "\n";
    }
    if ( !observations.empty() )
        out << "  observations " << observations.dump() << "\n";
    return out.str();
}

namespace
{

struct Failure
{
    std::string property;
    std::optional< std::size_t > instant;
    std::string instantiation;
};

using Counts = std::map< std::string, std::size_t >;

void count( Counts* counts, const std::string& property, std::size_t n = 1 )
{
    if ( counts )
        ( *counts )[ property ] += n;
}

std::vector< std::string > prop_names( std::size_t n )
{
    static const char* names[] = { "p", "q", "r" };
    return { names, names + n };
}

std::vector< AgentId > agent_names( std::size_t n )
{
    static const char* names[] = { "a", "b", "c" };
    return { names, names + n };
}

std::optional< std::size_t > first_false( const WorldSet& x )
{
    for ( std::size_t w = 0; w < x.size(); ++w )
        if ( !x.test( w ) )
            return w;
    return std::nullopt;
}

std::optional< std::size_t > first_false( const std::vector< bool >& v )
{
    for ( std::size_t t = 0; t < v.size(); ++t )
        if ( !v[ t ] )
            return t;
    return std::nullopt;
}

Formula iff( const Formula& a, const Formula& b )
{
    return Formula::land( Formula::implies( a, b ), Formula::implies( b, a ) );
}

// ---------------------------------------------------------------- static

// DNF over the model's propositions denoting exactly `x`, if one exists.
std::optional< Formula > set_formula( const SCModel& m, const WorldSet& x, const std::vector< std::string >& props )
{
    std::optional< Formula > out;
    for ( auto w : x.members() )
    {
        auto conj = Formula::top();
        bool first = true;
        const auto val = m.valuation( w );
        for ( const auto& p : props )
        {
            auto lit = val.contains( p ) ? Formula::prop( p ) : Formula::lnot( Formula::prop( p ) );
            conj = first ? lit : Formula::land( conj, lit );
            first = false;
        }
        out = out ? Formula::lor( *out, conj ) : conj;
    }
    if ( !out )
        out = Formula::bottom();
    if ( extension( m, *out ) != x )
        return std::nullopt;
    return out;
}

std::vector< Failure > check_static( const SCModel& m, Rng& rng, Counts* counts )
{
    std::vector< Failure > out;
    std::vector< std::string > props;
    for ( const auto& [ p, ext ] : m.prop_extensions() )
        props.push_back( p );
    if ( props.empty() )
        props.push_back( "p" );
    const auto groups = all_groups( m.agents() );

    std::vector< Formula > pool;
    const auto p = Formula::prop( props[ 0 ] );
    const auto q = Formula::prop( props.size() > 1 ? props[ 1 ] : props[ 0 ] );
    pool.push_back( Formula::lor( p, q ) );
    pool.push_back( Formula::lnot( Formula::land( Formula::lnot( p ), Formula::lnot( q ) ) ) );
    FormulaShape shape{ props, m.agents(), 2, true, true, true };
    for ( int i = 0; i < 6; ++i )
    {
        auto f = random_static_formula( rng, shape );
        pool.push_back( f );
        pool.push_back( random_equivalent( rng, f, props ) );
    }
    std::set< WorldSet > tracked;
    for ( auto n : { Neighborhood::Dabl, Neighborhood::Conf, Neighborhood::Disc, Neighborhood::Brings } )
        for ( const auto& [ key, sets ] : m.table( n ) )
            tracked.insert( sets.begin(), sets.end() );
    std::size_t added = 0;
    for ( const auto& x : tracked )
    {
        if ( added == 10 )
            break;
        if ( auto f = set_formula( m, x, props ) )
        {
            pool.push_back( *f );
            ++added;
        }
    }

    std::vector< WorldSet > exts;
    for ( const auto& f : pool )
        exts.push_back( extension( m, f ) );

    auto expect = [ & ]( const std::string& property, const Formula& f, const std::string& inst ) {
        count( counts, property );
        if ( auto w = first_false( extension( m, f ) ) )
            out.push_back( Failure{ property, std::nullopt,
                                    inst + " world=" + m.worlds()[ *w ] + " formula=" + print_static( f ) } );
    };

    for ( const auto& g : groups )
    {
        const auto gs = "G=" + g.str();
        expect( "b1", Formula::lnot( Formula::brings( g, Formula::top() ) ), gs );
        std::vector< WorldSet > brought;
        for ( std::size_t i = 0; i < pool.size(); ++i )
        {
            const auto& f = pool[ i ];
            const auto inst = gs + " phi=" + print_static( f );
            expect( "sc1", Formula::implies( Formula::conf( g, f ), Formula::dabl( g, f ) ), inst );
            expect( "sc2", Formula::implies( Formula::disc( g, f ), Formula::lnot( Formula::dabl( g, f ) ) ), inst );
            expect( "conf_disc_exclusive", Formula::lnot( Formula::land( Formula::conf( g, f ), Formula::disc( g, f ) ) ),
                    inst );
            expect( "b2", Formula::implies( Formula::brings( g, f ), f ), inst );
            brought.push_back( extension( m, Formula::brings( g, f ) ) );
        }
        for ( std::size_t i = 0; i < pool.size(); ++i )
            for ( std::size_t j = i + 1; j < pool.size(); ++j )
            {
                const auto inst = gs + " phi=" + print_static( pool[ i ] ) + " psi=" + print_static( pool[ j ] );
                if ( exts[ i ] == exts[ j ] )
                {
                    expect( "scr1", iff( Formula::dabl( g, pool[ i ] ), Formula::dabl( g, pool[ j ] ) ), inst );
                    expect( "scr2", iff( Formula::conf( g, pool[ i ] ), Formula::conf( g, pool[ j ] ) ), inst );
                    expect( "scr3", iff( Formula::disc( g, pool[ i ] ), Formula::disc( g, pool[ j ] ) ), inst );
                }
                if ( !( brought[ i ] & brought[ j ] ).none() )
                    expect( "b3",
                            Formula::implies( Formula::land( Formula::brings( g, pool[ i ] ), Formula::brings( g, pool[ j ] ) ),
                                              Formula::brings( g, Formula::land( pool[ i ], pool[ j ] ) ) ),
                            inst );
            }
    }
    return out;
}

void add_failures( SuiteReport& r, const std::vector< Failure >& fs, std::uint64_t seed, std::size_t index,
                   const json& input )
{
    for ( const auto& f : fs )
        r.counterexamples.push_back( Counterexample{ f.property, seed, index, f.instant, f.instantiation, input } );
}

// -------------------------------------------------------------- temporal

TemporalFormula mono( const Formula& f ) { return TemporalFormula::mono( f ); }

std::string show( const std::array< TemporalFormula, 4 >& v, int used )
{
    static const char* names[] = { "p", "q", "r", "s" };
    std::string out;
    for ( int i = 0; i < used; ++i )
        out += ( i ? " " : "" ) + std::string{ names[ i ] } + "=" + print_temporal( v[ i ] );
    return out;
}

int arity_of_ltl( int k ) { return k <= 6 ? 3 : k <= 10 ? 2 : 4; }

// Monolithic instantiation pool: modal facts of the trace plus atoms.
std::vector< TemporalFormula > mono_pool( const TraceModel& tm, const std::vector< std::string >& props, Rng& rng )
{
    std::vector< TemporalFormula > out;
    std::set< std::string > seen;
    auto add = [ & ]( const Formula& f ) {
        if ( seen.insert( print_static( f ) ).second )
            out.push_back( mono( f ) );
    };
    for ( const auto& p : props )
        add( Formula::prop( p ) );
    add( Formula::prop( "__true" ) );
    auto objectives = tracked_objectives( tm );
    const auto groups = all_groups( tm.agents() );
    std::size_t taken = 0;
    for ( const auto& x : objectives )
    {
        if ( taken == 8 )
            break;
        auto f = objective_formula( tm, x );
        if ( !f )
            continue;
        ++taken;
        const auto& g = groups[ rng.below( groups.size() ) ];
        add( Formula::dabl( g, *f ) );
        add( Formula::conf( g, *f ) );
        add( Formula::disc( g, *f ) );
    }
    return out;
}

// Instants of the trace and their per-group modal facts as formulas.
std::vector< TemporalFormula > derived_pool( const DerivedTrace& dt )
{
    std::vector< TemporalFormula > out;
    std::set< std::string > seen;
    auto add = [ & ]( const Formula& f ) {
        if ( seen.insert( print_static( f ) ).second )
            out.push_back( mono( f ) );
    };
    for ( const auto& p : dt.log.universe.props() )
        add( Formula::prop( p ) );
    add( Formula::prop( "__true" ) );
    for ( const auto& st : dt.instants )
    {
        for ( const auto* table : { &st.facts.dabl, &st.facts.conf, &st.facts.disc } )
            for ( const auto& [ id, f ] : *table )
            {
                add( Formula::dabl( f.group, f.objective ) );
                add( Formula::conf( f.group, f.objective ) );
                add( Formula::disc( f.group, f.objective ) );
            }
        for ( const auto& [ id, f ] : st.facts.brings )
            add( Formula::brings( f.group, f.objective ) );
        for ( const auto& [ id, f ] : st.facts.attempts )
            add( Formula::attempts( f.group, f.objective ) );
    }
    return out;
}

void check_ltl( const TraceModel& tm, const std::vector< TemporalFormula >& pool, Rng& rng, const std::string& where,
                std::vector< Failure >& out, Counts* counts, std::size_t* printed_ltl8_false )
{
    constexpr int draws = 10;
    auto pick = [ & ] {
        auto f = pool[ rng.below( pool.size() ) ];
        return rng.chance( 0.25 ) ? TemporalFormula::lnot( f ) : f;
    };
    for ( int k = 1; k <= 12; ++k )
        for ( int d = 0; d < draws; ++d )
        {
            std::array< TemporalFormula, 4 > v{ pick(), pick(), pick(), pick() };
            count( counts, "ltl" + std::to_string( k ) );
            if ( auto t = first_false( eval_trace( tm, ltl_axiom( k, v ) ) ) )
                out.push_back( Failure{ "ltl" + std::to_string( k ), t, where + " " + show( v, arity_of_ltl( k ) ) } );
            if ( k == 8 && printed_ltl8_false )
            {
                count( counts, "ltl8_as_printed (reported)" );
                if ( first_false( eval_trace( tm, ltl8_as_printed( v ) ) ) )
                    ++*printed_ltl8_false;
            }
        }
}

// F, G, W, P, H against their first-order readings over instants.
void check_derived_operators( const TraceModel& tm, const std::vector< TemporalFormula >& pool, Rng& rng,
                              std::vector< Failure >& out, Counts* counts )
{
    const auto a = pool[ rng.below( pool.size() ) ];
    const auto b = pool[ rng.below( pool.size() ) ];
    const auto va = eval_trace( tm, a );
    const auto vb = eval_trace( tm, b );
    const std::size_t n = tm.length();
    auto future_any = [ & ]( std::size_t t, const std::vector< bool >& v ) {
        for ( auto s = t + 1; s < n; ++s )
            if ( v[ s ] )
                return true;
        return false;
    };
    auto future_all = [ & ]( std::size_t t, const std::vector< bool >& v ) {
        for ( auto s = t + 1; s < n; ++s )
            if ( !v[ s ] )
                return false;
        return true;
    };
    auto past_any = [ & ]( std::size_t t, const std::vector< bool >& v ) {
        for ( std::size_t s = 0; s < t; ++s )
            if ( v[ s ] )
                return true;
        return false;
    };
    auto until = [ & ]( std::size_t t ) {
        for ( auto s = t + 1; s < n; ++s )
        {
            if ( vb[ s ] )
                return true;
            if ( !va[ s ] )
                return false;
        }
        return false;
    };
    const auto F = eval_trace( tm, TemporalFormula::eventually( a ) );
    const auto G = eval_trace( tm, TemporalFormula::globally( a ) );
    const auto W = eval_trace( tm, TemporalFormula::weak_until( a, b ) );
    const auto P = eval_trace( tm, TemporalFormula::past( a ) );
    const auto H = eval_trace( tm, TemporalFormula::has_always( a ) );
    count( counts, "derived_operators" );
    for ( std::size_t t = 0; t < n; ++t )
    {
        bool h = true;
        for ( std::size_t s = 0; s < t; ++s )
            h = h && va[ s ];
        const bool ok = F[ t ] == future_any( t, va ) && G[ t ] == future_all( t, va ) &&
                        W[ t ] == ( until( t ) || future_all( t, va ) ) && P[ t ] == past_any( t, va ) && H[ t ] == h;
        if ( !ok )
        {
            out.push_back( Failure{ "derived_operators", t, "a=" + print_temporal( a ) + " b=" + print_temporal( b ) } );
            return;
        }
    }
}

std::vector< Formula > lbda_objectives( const DerivedTrace& dt, Rng& rng )
{
    std::vector< Formula > out;
    std::set< CanonicalKey > keys;
    for ( const auto& st : dt.instants )
        for ( const auto* table : { &st.facts.dabl, &st.facts.conf, &st.facts.disc } )
            for ( const auto& [ id, f ] : *table )
                if ( keys.insert( id.key ).second )
                    out.push_back( f.objective );
    FormulaShape shape{ dt.log.universe.props(), {}, 2, false, false, true };
    for ( int i = 0; i < 2; ++i )
        out.push_back( random_static_formula( rng, shape ) );
    return out;
}

std::vector< Failure > check_derived( const EventLog& log, std::uint64_t inst_seed, Counts* counts,
                                      std::size_t* printed_ltl8_false )
{
    std::vector< Failure > out;
    Rng rng{ inst_seed };
    const auto dt = run( log );
    const auto tm = to_trace_model( dt );

    count( counts, "engine_validator_agreement" );
    auto report = validate_da_model( tm );
    if ( !report.ok() )
        out.push_back( Failure{ "engine_validator_agreement", report.violations.front().instant,
                                describe( tm, report.violations.front() ) } );

    const auto pool = derived_pool( dt );
    check_ltl( tm, pool, rng, "derived", out, counts, printed_ltl8_false );
    check_derived_operators( tm, pool, rng, out, counts );

    const auto groups = all_groups( log.agents );
    const auto objectives = lbda_objectives( dt, rng );
    for ( const auto& g : groups )
        for ( const auto& phi : objectives )
        {
            const auto inst = "G=" + g.str() + " phi=" + print_static( phi );
            for ( auto a : { DAAxiom::lbda1, DAAxiom::lbda2, DAAxiom::lbda3 } )
            {
                count( counts, to_string( a ) );
                if ( auto t = first_false( axiom_check( tm, a, g, phi ) ) )
                    out.push_back( Failure{ to_string( a ), t, inst } );
            }
            count( counts, "interdependence" );
            const auto dabl = eval_trace( tm, mono( Formula::dabl( g, phi ) ) );
            const auto conf = eval_trace( tm, mono( Formula::conf( g, phi ) ) );
            const bool any_dabl = std::find( dabl.begin(), dabl.end(), true ) != dabl.end();
            const bool any_conf = std::find( conf.begin(), conf.end(), true ) != conf.end();
            if ( any_dabl != any_conf )
                out.push_back( Failure{ "interdependence", std::nullopt, inst } );
        }

    count( counts, "no_a_priori_ability" );
    for ( const auto& [ id, f ] : dt.instants[ 0 ].facts.dabl )
        if ( !dt.instants[ 0 ].facts.conf.contains( id ) )
            out.push_back( Failure{ "no_a_priori_ability", 0, f.group.str() + " " + print_static( f.objective ) } );

    for ( const auto& st : dt.instants )
    {
        for ( const auto& [ id, f ] : st.facts.conf )
        {
            count( counts, "non_simultaneity" );
            for ( const auto& j : f.why )
                for ( auto e : j.events )
                    if ( log.events[ e ].t != st.t )
                        out.push_back( Failure{ "non_simultaneity", st.t,
                                                f.group.str() + " " + print_static( f.objective ) + " via #" +
                                                    std::to_string( e ) } );
            if ( log.flags.empty_group_excluded )
            {
                count( counts, "flag_empty_group_excluded" );
                if ( f.group.empty() )
                    out.push_back( Failure{ "flag_empty_group_excluded", st.t, print_static( f.objective ) } );
            }
            if ( log.flags.monotonic_conf )
                for ( const auto& h : groups )
                    if ( f.group.is_subset_of( h ) )
                    {
                        count( counts, "flag_monotonic_conf" );
                        if ( !st.facts.conf.contains( FactId{ h, f.key } ) )
                            out.push_back( Failure{ "flag_monotonic_conf", st.t,
                                                    f.group.str() + " to " + h.str() + " " + print_static( f.objective ) } );
                    }
        }
        if ( log.flags.empty_group_excluded )
            for ( const auto& [ id, f ] : st.facts.dabl )
            {
                count( counts, "flag_empty_group_excluded" );
                if ( f.group.empty() )
                    out.push_back( Failure{ "flag_empty_group_excluded", st.t, "Dabl{} " + print_static( f.objective ) } );
            }
    }

    for ( std::size_t id = 0; id < log.events.size(); ++id )
    {
        const auto& e = log.events[ id ];
        if ( e.kind != EventKind::Agency )
            continue;
        const FactId fid{ e.group, canonical_key( e.objective, log.universe ) };
        const auto& facts = dt.instants[ e.t ].facts;
        if ( !( e.group.empty() && log.flags.empty_group_excluded ) )
        {
            count( counts, "b4_within_b5" );
            auto it = facts.conf.find( fid );
            if ( it == facts.conf.end() )
                out.push_back( Failure{ "b4_within_b5", e.t, describe( e ) } );
        }
        if ( log.flags.b6 )
        {
            count( counts, "flag_b6" );
            if ( !facts.attempts.contains( fid ) )
                out.push_back( Failure{ "flag_b6", e.t, describe( e ) } );
        }
    }
    return out;
}

std::vector< Failure > check_unconstrained( const TraceModel& tm, std::uint64_t inst_seed, Counts* counts )
{
    std::vector< Failure > out;
    Rng rng{ inst_seed };
    std::vector< std::string > props;
    for ( const auto& [ p, ext ] : tm.at( 0 ).model->prop_extensions() )
        props.push_back( p );
    const auto pool = mono_pool( tm, props, rng );
    check_ltl( tm, pool, rng, "unconstrained", out, counts, nullptr );
    check_derived_operators( tm, pool, rng, out, counts );
    return out;
}

json log_json( const EventLog& log ) { return write_event_log( log ); }

EventLog truncate( const EventLog& log, std::size_t horizon )
{
    EventLog out = log;
    out.horizon = horizon;
    std::erase_if( out.events, [ & ]( const Event& e ) { return e.t >= horizon; } );
    std::erase_if( out.valuations, [ & ]( const ValuationRecord& v ) { return v.t >= horizon; } );
    return out;
}

bool runs( const EventLog& log )
{
    try
    {
        ( void )run( log );
        return true;
    }
    catch ( const Error& )
    {
        return false;
    }
}

} // namespace

// ---------------------------------------------------------------- public

TemporalFormula ltl_axiom( int index, const std::array< TemporalFormula, 4 >& v )
{
    using T = TemporalFormula;
    const auto &p = v[ 0 ], &q = v[ 1 ], &r = v[ 2 ], &s = v[ 3 ];
    switch ( index )
    {
    case 1: return T::implies( T::land( T::globally( T::implies( p, q ) ), T::until( r, p ) ), T::until( r, q ) );
    case 2: return T::implies( T::land( T::has_always( T::implies( p, q ) ), T::since( r, p ) ), T::since( r, q ) );
    case 3: return T::implies( T::land( T::globally( T::implies( p, q ) ), T::until( p, r ) ), T::until( q, r ) );
    case 4: return T::implies( T::land( T::has_always( T::implies( p, q ) ), T::since( p, r ) ), T::since( q, r ) );
    case 5: return T::implies( T::land( p, T::until( r, q ) ), T::until( r, T::land( q, T::since( r, p ) ) ) );
    case 6: return T::implies( T::land( p, T::since( r, q ) ), T::since( r, T::land( q, T::until( r, p ) ) ) );
    case 7: return T::implies( T::until( q, p ), T::until( T::land( q, T::until( q, p ) ), p ) );
    case 8: return T::implies( T::since( q, p ), T::since( T::land( q, T::since( q, p ) ), p ) );
    case 9: return T::implies( T::until( q, T::land( q, T::until( q, p ) ) ), T::until( q, p ) );
    case 10: return T::implies( T::since( q, T::land( q, T::since( q, p ) ) ), T::since( q, p ) );
    case 11:
    {
        const auto qs = T::land( q, s );
        return T::implies( T::land( T::until( q, p ), T::until( s, r ) ),
                           T::lor( T::lor( T::until( qs, T::land( p, r ) ), T::until( qs, T::land( p, s ) ) ),
                                   T::until( qs, T::land( q, r ) ) ) );
    }
    case 12:
    {
        const auto qs = T::land( q, s );
        return T::implies( T::land( T::since( q, p ), T::since( s, r ) ),
                           T::lor( T::lor( T::since( qs, T::land( p, r ) ), T::since( qs, T::land( p, s ) ) ),
                                   T::since( qs, T::land( q, r ) ) ) );
    }
    default: throw Error{ "no axiom ltl" + std::to_string( index ) };
    }
}

TemporalFormula ltl8_as_printed( const std::array< TemporalFormula, 4 >& v )
{
    using T = TemporalFormula;
    const auto &p = v[ 0 ], &q = v[ 1 ];
    return T::implies( T::since( q, p ), T::until( T::land( q, T::since( q, p ) ), p ) );
}

EventLog random_event_log( std::uint64_t seed, const RandomLogParams& params )
{
    Rng rng{ seed };
    EventLog log;
    log.horizon = 1 + rng.below( params.max_horizon );
    const auto props = prop_names( 1 + rng.below( params.max_props ) );
    log.universe = Universe{ props };
    log.agents = agent_names( 1 + rng.below( params.max_agents ) );
    if ( params.random_flags )
    {
        log.flags.empty_group_excluded = rng.chance( 0.3 );
        log.flags.monotonic_conf = rng.chance( 0.3 );
        log.flags.b6 = rng.chance( 0.3 );
    }

    std::vector< std::size_t > valuation( log.horizon );
    for ( std::size_t t = 0; t < log.horizon; ++t )
    {
        ValuationRecord v{ t, {} };
        for ( const auto& p : props )
            if ( rng.chance( 0.5 ) )
                v.props.insert( p );
        valuation[ t ] = log.universe.valuation_index( v.props );
        if ( !v.props.empty() )
            log.valuations.push_back( std::move( v ) );
    }

    const FormulaShape shape{ props, {}, 2, false, false, true };
    std::vector< Formula > pool;
    for ( int i = 0; i < 4; ++i )
        pool.push_back( random_static_formula( rng, shape ) );
    auto objective = [ & ] {
        if ( rng.chance( 0.2 ) )
            return random_static_formula( rng, shape );
        const auto& f = pool[ rng.below( pool.size() ) ];
        return rng.chance( 0.3 ) ? random_equivalent( rng, f, props ) : f;
    };
    auto holds = [ & ]( const Formula& f, std::size_t t ) {
        return canonical_key( f, log.universe ).bits().test( valuation[ t ] );
    };
    const auto groups = all_groups( log.agents );
    auto group = [ & ]( bool allow_empty ) {
        if ( allow_empty && rng.chance( 0.1 ) )
            return Group{};
        return groups[ 1 + rng.below( groups.size() - 1 ) ];
    };

    for ( std::size_t t = 0; t < log.horizon; ++t )
    {
        const auto n = rng.below( params.max_events_per_instant + 1 );
        std::vector< std::size_t > agency_here;
        for ( std::size_t j = 0; j < n; ++j )
        {
            Event e;
            e.t = t;
            const double roll = static_cast< double >( rng.below( 1000 ) ) / 1000.0;
            e.kind = roll < 0.3    ? EventKind::Agency
                     : roll < 0.5  ? EventKind::Attempt
                     : roll < 0.7  ? EventKind::Grant
                     : roll < 0.85 ? EventKind::Revoke
                                   : EventKind::Agree;
            bool usable = true;
            switch ( e.kind )
            {
            case EventKind::Agency:
            {
                e.group = group( false );
                usable = false;
                for ( int tries = 0; tries < 8 && !usable; ++tries )
                {
                    e.objective = objective();
                    usable = holds( e.objective, t ) && !canonical_key( e.objective, log.universe ).is_tautology();
                }
                break;
            }
            case EventKind::Attempt:
                if ( !agency_here.empty() && rng.chance( 0.5 ) )
                {
                    const auto& a = log.events[ agency_here[ rng.below( agency_here.size() ) ] ];
                    e.group = a.group;
                    e.objective = random_equivalent( rng, a.objective, props );
                }
                else
                {
                    e.group = group( true );
                    e.objective = objective();
                }
                break;
            case EventKind::Grant:
            case EventKind::Revoke:
                e.group = group( true );
                e.objective = objective();
                break;
            case EventKind::Agree:
            {
                e.group = group( false );
                e.objective = objective();
                usable = false;
                for ( int tries = 0; tries < 8 && !usable; ++tries )
                {
                    e.deadline = random_static_formula( rng, shape );
                    usable = !holds( *e.deadline, t );
                }
                break;
            }
            }
            if ( !usable )
                continue;
            log.events.push_back( std::move( e ) );
            if ( !runs( truncate( log, t + 1 ) ) )
                log.events.pop_back();
            else if ( log.events.back().kind == EventKind::Agency )
                agency_here.push_back( log.events.size() - 1 );
        }
    }
    while ( !runs( log ) && !log.events.empty() )
        log.events.pop_back();
    return log;
}

TraceModel random_trace( std::uint64_t seed, const RandomTraceParams& params )
{
    Rng rng{ seed };
    const auto n = 1 + rng.below( params.max_horizon );
    RandomModelParams mp;
    mp.props = 1 + rng.below( params.max_props );
    mp.agents = 1 + rng.below( params.max_agents );
    mp.density = 0.15 + 0.3 * static_cast< double >( rng.below( 100 ) ) / 100.0;
    mp.agency_tables = rng.chance( 0.5 );
    mp.canonical_frame = true;
    std::vector< PointedModel > instants;
    for ( std::size_t t = 0; t < n; ++t )
    {
        auto m = std::make_shared< SCModel >( random_sc_model( derive_seed( seed, t + 1 ), mp ) );
        const auto point = rng.below( m->world_count() );
        instants.push_back( PointedModel{ std::move( m ), point } );
    }
    return TraceModel{ std::move( instants ) };
}

TraceModel corrupt_trace( const TraceModel& tm, std::uint64_t seed )
{
    Rng rng{ seed };
    const auto tracked = tracked_objectives( tm );
    const auto groups = all_groups( tm.agents() );
    std::vector< PointedModel > out;
    for ( const auto& pm : tm.instants() )
    {
        if ( !rng.chance( 0.5 ) )
        {
            out.push_back( pm );
            continue;
        }
        auto m = std::make_shared< SCModel >( *pm.model );
        const auto mutations = 1 + rng.below( 2 );
        for ( std::size_t k = 0; k < mutations; ++k )
        {
            const auto roll = rng.below( 5 );
            const auto n = roll < 3 ? Neighborhood::Dabl : roll == 3 ? Neighborhood::Conf : Neighborhood::Disc;
            const auto& g = groups[ rng.below( groups.size() ) ];
            WorldSet x = m->empty_set();
            if ( !tracked.empty() && rng.chance( 0.7 ) )
                x = tracked[ rng.below( tracked.size() ) ];
            else
                for ( std::size_t w = 0; w < m->world_count(); ++w )
                    if ( rng.chance( 0.5 ) )
                        x.set( w );
            if ( m->contains( n, pm.point, g, x ) )
                m->remove( n, pm.point, g, x );
            else
                m->add( n, pm.point, g, x );
        }
        out.push_back( PointedModel{ std::move( m ), pm.point } );
    }
    return TraceModel{ std::move( out ), true };
}

EventLog rewrite_objectives( const EventLog& log, std::uint64_t seed )
{
    Rng rng{ seed };
    EventLog out = log;
    const auto& props = log.universe.props();
    for ( auto& e : out.events )
    {
        e.objective = random_equivalent( rng, e.objective, props );
        if ( e.deadline )
            e.deadline = random_equivalent( rng, *e.deadline, props );
    }
    return out;
}

EventLog shrink_log( EventLog log, const std::function< bool( const EventLog& ) >& fails )
{
    auto still = [ & ]( const EventLog& candidate ) {
        try
        {
            return fails( candidate );
        }
        catch ( const Error& )
        {
            return false;
        }
    };
    for ( bool changed = true; changed; )
    {
        changed = false;
        while ( log.horizon > 1 )
        {
            auto candidate = truncate( log, log.horizon - 1 );
            if ( !still( candidate ) )
                break;
            log = std::move( candidate );
            changed = true;
        }
        for ( std::size_t i = 0; i < log.events.size(); )
        {
            auto candidate = log;
            candidate.events.erase( candidate.events.begin() + static_cast< std::ptrdiff_t >( i ) );
            if ( still( candidate ) )
            {
                log = std::move( candidate );
                changed = true;
            }
            else
                ++i;
        }
    }
    return log;
}

SuiteReport static_soundness( std::uint64_t seed, std::size_t cases )
{
    SuiteReport r;
    r.suite = "static";
    r.seed = seed;
    r.cases = cases;
    for ( std::size_t i = 0; i < cases; ++i )
    {
        const auto cs = derive_seed( seed, i );
        Rng rng{ cs };
        RandomModelParams mp;
        mp.worlds = 1 + rng.below( 5 );
        mp.agents = 1 + rng.below( 3 );
        mp.props = 1 + rng.below( 3 );
        mp.density = 0.1 + 0.5 * static_cast< double >( rng.below( 100 ) ) / 100.0;
        mp.agency_tables = rng.chance( 0.7 );
        const auto m = random_sc_model( derive_seed( cs, 0 ), mp );
        r.checks[ "generator_valid" ] += 1;
        std::vector< Failure > fs;
        auto report = validate_sc_model( m );
        if ( !report.ok() )
            fs.push_back( Failure{ "generator_valid", std::nullopt, describe( m, report.violations.front() ) } );
        auto more = check_static( m, rng, &r.checks );
        fs.insert( fs.end(), more.begin(), more.end() );
        if ( !fs.empty() )
            add_failures( r, fs, cs, i, model_to_json( m ) );
    }
    return r;
}

SuiteReport static_soundness( std::span< const SCModel > models, std::uint64_t seed )
{
    SuiteReport r;
    r.suite = "static";
    r.seed = seed;
    r.cases = models.size();
    for ( std::size_t i = 0; i < models.size(); ++i )
    {
        const auto cs = derive_seed( seed, i );
        Rng rng{ cs };
        auto fs = check_static( models[ i ], rng, &r.checks );
        add_failures( r, fs, cs, i, model_to_json( models[ i ] ) );
    }
    return r;
}

SuiteReport temporal_soundness( std::uint64_t seed, std::size_t cases )
{
    SuiteReport r;
    r.suite = "temporal";
    r.seed = seed;
    r.cases = cases;
    std::size_t printed_ltl8_false = 0;
    for ( std::size_t i = 0; i < cases; ++i )
    {
        const auto cs = derive_seed( seed, i );
        const auto log = random_event_log( derive_seed( cs, 0 ) );
        const auto inst_seed = derive_seed( cs, 1 );
        auto fs = check_derived( log, inst_seed, &r.checks, &printed_ltl8_false );
        std::set< std::string > reported;
        for ( const auto& f : fs )
        {
            if ( !reported.insert( f.property ).second )
                continue;
            const auto small = shrink_log( log, [ & ]( const EventLog& l ) {
                const auto again = check_derived( l, inst_seed, nullptr, nullptr );
                return std::any_of( again.begin(), again.end(),
                                    [ & ]( const Failure& g ) { return g.property == f.property; } );
            } );
            auto shrunk = check_derived( small, inst_seed, nullptr, nullptr );
            auto it = std::find_if( shrunk.begin(), shrunk.end(),
                                    [ & ]( const Failure& g ) { return g.property == f.property; } );
            const auto& shown = it != shrunk.end() ? *it : f;
            r.counterexamples.push_back(
                Counterexample{ f.property, cs, i, shown.instant, shown.instantiation, log_json( small ) } );
        }

        const auto tm = random_trace( derive_seed( cs, 2 ) );
        auto us = check_unconstrained( tm, derive_seed( cs, 3 ), &r.checks );
        add_failures( r, us, cs, i, trace_to_json( tm ) );
    }
    r.observations[ "ltl8_as_printed_falsified_instances" ] = printed_ltl8_false;
    return r;
}

SuiteReport axiom_agreement( std::uint64_t seed, std::size_t cases )
{
    SuiteReport r;
    r.suite = "axiom_agreement";
    r.seed = seed;
    r.cases = cases;
    std::size_t violations_seen = 0;
    std::map< std::string, std::size_t > kinds;
    for ( std::size_t i = 0; i < cases; ++i )
    {
        const auto cs = derive_seed( seed, i );
        const auto kind = i % 3;
        auto make = [ & ]() -> TraceModel {
            if ( kind == 2 )
                return random_trace( derive_seed( cs, 0 ) );
            RandomLogParams lp;
            lp.max_agents = 2;
            lp.max_props = 2;
            auto tm = to_trace_model( run( random_event_log( derive_seed( cs, 0 ), lp ) ) );
            return kind == 0 ? tm : corrupt_trace( tm, derive_seed( cs, 1 ) );
        };
        const auto tm = make();
        kinds[ kind == 0 ? "derived" : kind == 1 ? "corrupted" : "unconstrained" ] += 1;

        const auto report = validate_da_model( tm );
        violations_seen += report.violations.size();
        std::set< std::tuple< DAConstraint, std::size_t, Group, WorldSet > > violated;
        for ( const auto& v : report.violations )
            violated.emplace( v.constraint, v.instant, v.group, v.objective );

        std::vector< Failure > fs;
        const auto groups = all_groups( tm.agents() );
        for ( const auto& x : tracked_objectives( tm ) )
        {
            auto phi = objective_formula( tm, x );
            if ( !phi )
            {
                fs.push_back( Failure{ "objective_expressible", std::nullopt, describe_objective( tm, x ) } );
                continue;
            }
            for ( const auto& g : groups )
                for ( auto [ c, a ] : { std::pair{ DAConstraint::C1, DAAxiom::lbda1 },
                                        std::pair{ DAConstraint::C2, DAAxiom::lbda2 },
                                        std::pair{ DAConstraint::C3, DAAxiom::lbda3 } } )
                {
                    const auto truth = axiom_check( tm, a, g, *phi );
                    for ( std::size_t t = 0; t < tm.length(); ++t )
                    {
                        const auto name = std::string{ to_string( c ) } + "_vs_" + to_string( a );
                        r.checks[ name ] += 1;
                        if ( truth[ t ] == violated.contains( { c, t, g, x } ) )
                            fs.push_back( Failure{ name, t,
                                                   "G=" + g.str() + " phi=" + print_static( *phi ) + " axiom=" +
                                                       ( truth[ t ] ? "true" : "false" ) } );
                    }
                }
        }
        add_failures( r, fs, cs, i, trace_to_json( tm ) );
    }
    r.observations[ "violations_seen" ] = violations_seen;
    r.observations[ "traces" ] = kinds;
    return r;
}

SuiteReport interdependence( std::uint64_t seed, std::size_t cases )
{
    SuiteReport r;
    r.suite = "interdependence";
    r.seed = seed;
    r.cases = cases;
    for ( std::size_t i = 0; i < cases; ++i )
    {
        const auto cs = derive_seed( seed, i );
        const auto log = random_event_log( derive_seed( cs, 0 ) );
        const auto dt = run( log );
        const auto tm = to_trace_model( dt );
        std::set< FactId > ever_dabl, ever_conf;
        for ( const auto& st : dt.instants )
        {
            for ( const auto& [ id, f ] : st.facts.dabl )
                ever_dabl.insert( id );
            for ( const auto& [ id, f ] : st.facts.conf )
                ever_conf.insert( id );
        }
        std::vector< Failure > fs;
        r.checks[ "facts" ] += 1;
        if ( ever_dabl != ever_conf )
            fs.push_back( Failure{ "facts", std::nullopt, "dabl and conf fact sets differ" } );
        const auto groups = all_groups( tm.agents() );
        for ( const auto& x : tracked_objectives( tm ) )
        {
            const auto phi = objective_formula( tm, x );
            if ( !phi )
                continue;
            for ( const auto& g : groups )
            {
                r.checks[ "semantic" ] += 1;
                const auto some_dabl =
                    eval_temporal( tm, 0, TemporalFormula::lor( mono( Formula::dabl( g, *phi ) ),
                                                                TemporalFormula::eventually( mono( Formula::dabl( g, *phi ) ) ) ) );
                const auto some_conf =
                    eval_temporal( tm, 0, TemporalFormula::lor( mono( Formula::conf( g, *phi ) ),
                                                                TemporalFormula::eventually( mono( Formula::conf( g, *phi ) ) ) ) );
                if ( some_dabl != some_conf )
                    fs.push_back( Failure{ "semantic", std::nullopt, "G=" + g.str() + " phi=" + print_static( *phi ) } );
            }
        }
        add_failures( r, fs, cs, i, log_json( log ) );
    }
    return r;
}

SuiteReport bite( std::uint64_t seed, std::size_t cases )
{
    SuiteReport r;
    r.suite = "bite";
    r.seed = seed;
    r.cases = 0;
    std::map< std::string, json > witnesses;
    const DAAxiom axioms[] = { DAAxiom::lbda1, DAAxiom::lbda2, DAAxiom::lbda3 };
    for ( std::size_t i = 0; i < cases && witnesses.size() < 3; ++i )
    {
        ++r.cases;
        const auto cs = derive_seed( seed, i );
        const auto tm = random_trace( cs );
        const auto groups = all_groups( tm.agents() );
        for ( const auto& x : tracked_objectives( tm ) )
        {
            const auto phi = objective_formula( tm, x );
            if ( !phi )
                continue;
            for ( const auto& g : groups )
                for ( auto a : axioms )
                {
                    if ( witnesses.contains( to_string( a ) ) )
                        continue;
                    r.checks[ to_string( a ) ] += 1;
                    if ( auto t = first_false( axiom_check( tm, a, g, *phi ) ) )
                        witnesses[ to_string( a ) ] = json{ { "case", i },
                                                            { "seed", cs },
                                                            { "instant", *t },
                                                            { "instance", print_temporal( axiom_instance( a, g, *phi ) ) },
                                                            { "trace", trace_to_json( tm ) } };
                }
        }
    }
    for ( auto a : axioms )
        if ( !witnesses.contains( to_string( a ) ) )
            r.counterexamples.push_back( Counterexample{ std::string{ "no_falsifier_" } + to_string( a ), seed, 0,
                                                         std::nullopt, "", json{} } );
    r.observations[ "witnesses" ] = witnesses;
    return r;
}

SuiteReport congruence( std::uint64_t seed, std::size_t cases )
{
    SuiteReport r;
    r.suite = "congruence";
    r.seed = seed;
    r.cases = cases;
    auto same_table = []( const FactTable& a, const FactTable& b ) {
        if ( a.size() != b.size() )
            return false;
        for ( auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib )
        {
            if ( ia->first != ib->first || ia->second.why.size() != ib->second.why.size() )
                return false;
            for ( std::size_t k = 0; k < ia->second.why.size(); ++k )
            {
                const auto &ja = ia->second.why[ k ], &jb = ib->second.why[ k ];
                if ( ja.rule != jb.rule || ja.events != jb.events || ja.from != jb.from )
                    return false;
            }
        }
        return true;
    };
    for ( std::size_t i = 0; i < cases; ++i )
    {
        const auto cs = derive_seed( seed, i );
        const auto log = random_event_log( derive_seed( cs, 0 ) );
        const auto rewritten = rewrite_objectives( log, derive_seed( cs, 1 ) );
        const auto a = run( log );
        std::vector< Failure > fs;
        r.checks[ "fact_sets" ] += 1;
        try
        {
            const auto b = run( rewritten );
            for ( std::size_t t = 0; t < a.instants.size(); ++t )
            {
                const auto &fa = a.instants[ t ].facts, &fb = b.instants[ t ].facts;
                if ( !same_table( fa.conf, fb.conf ) || !same_table( fa.disc, fb.disc ) ||
                     !same_table( fa.dabl, fb.dabl ) || !same_table( fa.brings, fb.brings ) ||
                     !same_table( fa.attempts, fb.attempts ) ||
                     a.instants[ t ].active_tasks != b.instants[ t ].active_tasks )
                {
                    fs.push_back( Failure{ "fact_sets", t, "" } );
                    break;
                }
            }
            if ( a.tasks.size() != b.tasks.size() )
                fs.push_back( Failure{ "fact_sets", std::nullopt, "task counts differ" } );
            for ( std::size_t k = 0; k < std::min( a.tasks.size(), b.tasks.size() ); ++k )
            {
                const auto &ta = a.tasks[ k ], &tb = b.tasks[ k ];
                if ( ta.objective_key != tb.objective_key || ta.deadline_key != tb.deadline_key ||
                     ta.status != tb.status || ta.closed_at != tb.closed_at )
                    fs.push_back( Failure{ "fact_sets", ta.closed_at, "task " + std::to_string( k ) } );
            }
        }
        catch ( const Error& e )
        {
            fs.push_back( Failure{ "fact_sets", std::nullopt, std::string{ "rewritten log rejected: " } + e.what() } );
        }
        add_failures( r, fs, cs, i, json{ { "log", log_json( log ) }, { "rewritten", log_json( rewritten ) } } );
    }
    return r;
}

} // namespace deemed
