#include "deemed/static_model.hpp"

#include <algorithm>
#include <cassert>

#include "deemed/error.hpp"
#include "deemed/random.hpp"

namespace deemed
{

const char* to_string( Neighborhood n )
{
    switch ( n )
    {
    case Neighborhood::Dabl: return "dabl";
    case Neighborhood::Conf: return "conf";
    case Neighborhood::Disc: return "disc";
    case Neighborhood::Brings: return "E";
    case Neighborhood::Attempts: return "Att";
    }
    return "?";
}

const char* to_string( PairTable n )
{
    return n == PairTable::Task ? "Task" : "Agree";
}

const char* to_string( ModelConstraint c )
{
    switch ( c )
    {
    case ModelConstraint::ConfWithinDabl: return "constraint1";
    case ModelConstraint::DiscOutsideDabl: return "constraint2";
    case ModelConstraint::NoTautologyBrought: return "b1";
    case ModelConstraint::AgencySucceeds: return "b2";
    case ModelConstraint::AgencyAggregates: return "b3";
    }
    return "?";
}

SCModel::SCModel( std::vector< std::string > worlds, std::vector< AgentId > agents )
    : _worlds{ std::move( worlds ) }, _agents{ std::move( agents ) }
{
    if ( _worlds.empty() )
        throw FormatError{ "a model needs at least one world" };
    auto sorted = _worlds;
    std::sort( sorted.begin(), sorted.end() );
    if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
        throw FormatError{ "duplicate world id" };
    std::sort( _agents.begin(), _agents.end() );
    _agents.erase( std::unique( _agents.begin(), _agents.end() ), _agents.end() );
    for ( const auto& a : _agents )
        if ( !is_valid_agent_name( a ) )
            throw FormatError{ "invalid agent name '" + a + "'" };
}

std::optional< std::size_t > SCModel::world_index( std::string_view id ) const
{
    auto it = std::find( _worlds.begin(), _worlds.end(), id );
    if ( it == _worlds.end() )
        return std::nullopt;
    return static_cast< std::size_t >( it - _worlds.begin() );
}

void SCModel::check_world( std::size_t world ) const
{
    if ( world >= _worlds.size() )
        throw FormatError{ "world index " + std::to_string( world ) + " out of range" };
}

void SCModel::check_set( const WorldSet& x ) const
{
    if ( x.size() != _worlds.size() )
        throw FormatError{ "world-set width does not match the model" };
}

void SCModel::check_group( const Group& g ) const
{
    for ( const auto& a : g.members() )
        if ( !std::binary_search( _agents.begin(), _agents.end(), a ) )
            throw UnknownAgent{ "agent '" + a + "' is not declared in the model" };
}

void SCModel::set_prop( std::size_t world, const std::string& prop, bool value )
{
    check_world( world );
    auto [ it, inserted ] = _props.try_emplace( prop, empty_set() );
    it->second.set( world, value );
}

void SCModel::set_prop_extension( const std::string& prop, WorldSet extension )
{
    check_set( extension );
    _props.insert_or_assign( prop, std::move( extension ) );
}

WorldSet SCModel::prop_extension( std::string_view prop ) const
{
    if ( prop == true_atom )
        return full_set();
    auto it = _props.find( prop );
    return it == _props.end() ? empty_set() : it->second;
}

std::set< std::string > SCModel::valuation( std::size_t world ) const
{
    check_world( world );
    std::set< std::string > out;
    for ( const auto& [ p, ext ] : _props )
        if ( ext.test( world ) )
            out.insert( p );
    return out;
}

void SCModel::add( Neighborhood n, std::size_t world, const Group& g, WorldSet x )
{
    check_world( world );
    check_set( x );
    check_group( g );
    _tables[ static_cast< std::size_t >( n ) ][ { world, g } ].insert( std::move( x ) );
}

void SCModel::remove( Neighborhood n, std::size_t world, const Group& g, const WorldSet& x )
{
    auto& t = _tables[ static_cast< std::size_t >( n ) ];
    auto it = t.find( { world, g } );
    if ( it == t.end() )
        return;
    it->second.erase( x );
    if ( it->second.empty() )
        t.erase( it );
}

bool SCModel::contains( Neighborhood n, std::size_t world, const Group& g, const WorldSet& x ) const
{
    const auto& t = _tables[ static_cast< std::size_t >( n ) ];
    auto it = t.find( { world, g } );
    return it != t.end() && it->second.contains( x );
}

const std::set< WorldSet >& SCModel::members( Neighborhood n, std::size_t world, const Group& g ) const
{
    static const std::set< WorldSet > none;
    const auto& t = _tables[ static_cast< std::size_t >( n ) ];
    auto it = t.find( { world, g } );
    return it == t.end() ? none : it->second;
}

void SCModel::add_pair( PairTable n, std::size_t world, const Group& g, WorldSet objective, WorldSet deadline )
{
    check_world( world );
    check_set( objective );
    check_set( deadline );
    check_group( g );
    _pairs[ static_cast< std::size_t >( n ) ][ { world, g } ].emplace( std::move( objective ), std::move( deadline ) );
}

bool SCModel::contains_pair( PairTable n, std::size_t world, const Group& g, const WorldSet& objective,
                             const WorldSet& deadline ) const
{
    const auto& t = _pairs[ static_cast< std::size_t >( n ) ];
    auto it = t.find( { world, g } );
    return it != t.end() && it->second.contains( { objective, deadline } );
}

namespace
{

Neighborhood table_of( StaticOp op )
{
    switch ( op )
    {
    case StaticOp::Dabl: return Neighborhood::Dabl;
    case StaticOp::Conf: return Neighborhood::Conf;
    case StaticOp::Disc: return Neighborhood::Disc;
    case StaticOp::Brings: return Neighborhood::Brings;
    default: return Neighborhood::Attempts;
    }
}

} // namespace

WorldSet extension( const SCModel& m, const Formula& f )
{
    switch ( f.op() )
    {
    case StaticOp::Prop: return m.prop_extension( f.name() );
    case StaticOp::Top: return m.full_set();
    case StaticOp::Bottom: return m.empty_set();
    case StaticOp::Not: return ~extension( m, f.arg() );
    case StaticOp::And: return extension( m, f.arg( 0 ) ) & extension( m, f.arg( 1 ) );
    case StaticOp::Or: return extension( m, f.arg( 0 ) ) | extension( m, f.arg( 1 ) );
    case StaticOp::Implies: return ~extension( m, f.arg( 0 ) ) | extension( m, f.arg( 1 ) );
    case StaticOp::Task:
    case StaticOp::Agree:
    {
        m.check_group( f.group() );
        const auto objective = extension( m, f.arg( 0 ) );
        const auto deadline = extension( m, f.arg( 1 ) );
        const auto table = f.op() == StaticOp::Task ? PairTable::Task : PairTable::Agree;
        auto out = m.empty_set();
        for ( std::size_t w = 0; w < m.world_count(); ++w )
            out.set( w, m.contains_pair( table, w, f.group(), objective, deadline ) );
        return out;
    }
    default:
    {
        m.check_group( f.group() );
        const auto arg = extension( m, f.arg() );
        const auto table = table_of( f.op() );
        auto out = m.empty_set();
        for ( std::size_t w = 0; w < m.world_count(); ++w )
            out.set( w, m.contains( table, w, f.group(), arg ) );
        return out;
    }
    }
}

bool eval_static( const SCModel& m, std::size_t world, const Formula& f )
{
    if ( world >= m.world_count() )
        throw FormatError{ "world index out of range" };
    return extension( m, f ).test( world );
}

ValidationReport validate_sc_model( const SCModel& m )
{
    ValidationReport report;
    for ( const auto& [ key, sets ] : m.table( Neighborhood::Conf ) )
        for ( const auto& x : sets )
            if ( !m.contains( Neighborhood::Dabl, key.first, key.second, x ) )
                report.violations.push_back( { ModelConstraint::ConfWithinDabl, key.first, key.second, x, {} } );

    for ( const auto& [ key, sets ] : m.table( Neighborhood::Disc ) )
        for ( const auto& x : sets )
            if ( m.contains( Neighborhood::Dabl, key.first, key.second, x ) )
                report.violations.push_back( { ModelConstraint::DiscOutsideDabl, key.first, key.second, x, {} } );

    for ( const auto& [ key, sets ] : m.table( Neighborhood::Brings ) )
    {
        const auto& [ w, g ] = key;
        for ( const auto& x : sets )
        {
            if ( x.all() )
                report.violations.push_back( { ModelConstraint::NoTautologyBrought, w, g, x, {} } );
            if ( !x.test( w ) )
                report.violations.push_back( { ModelConstraint::AgencySucceeds, w, g, x, {} } );
        }
        for ( auto a = sets.begin(); a != sets.end(); ++a )
            for ( auto b = std::next( a ); b != sets.end(); ++b )
                if ( !sets.contains( *a & *b ) )
                    report.violations.push_back( { ModelConstraint::AgencyAggregates, w, g, *a, *b } );
    }
    return report;
}

std::string describe_set( const SCModel& m, const WorldSet& x )
{
    std::string out = "{";
    bool first = true;
    for ( auto i : x.members() )
    {
        if ( !first )
            out += ',';
        first = false;
        out += m.worlds()[ i ];
    }
    return out + "}";
}

std::string describe( const SCModel& m, const ModelViolation& v )
{
    std::string out = std::string{ to_string( v.constraint ) } + " w=" + m.worlds()[ v.world ] + " G=" + v.group.str() +
                      " X=" + describe_set( m, v.set );
    if ( v.other )
        out += " Y=" + describe_set( m, *v.other );
    return out;
}

SCModel random_sc_model( std::uint64_t seed, const RandomModelParams& params )
{
    const std::size_t n_worlds = params.canonical_frame ? std::size_t{ 1 } << params.props : params.worlds;
    if ( params.agents > 3 || params.props > 3 || ( !params.canonical_frame && ( n_worlds == 0 || n_worlds > 5 ) ) )
        throw CapExceeded{ "random models are capped at 5 worlds, 3 agents, 3 propositions" };

    Rng rng{ seed };
    std::vector< std::string > worlds;
    for ( std::size_t i = 0; i < n_worlds; ++i )
        worlds.push_back( "w" + std::to_string( i ) );
    std::vector< AgentId > agents;
    for ( std::size_t i = 0; i < params.agents; ++i )
        agents.push_back( std::string( 1, static_cast< char >( 'a' + i ) ) );
    static const char* prop_names[] = { "p", "q", "r" };

    SCModel m{ worlds, agents };
    for ( std::size_t w = 0; w < n_worlds; ++w )
        for ( std::size_t p = 0; p < params.props; ++p )
        {
            const bool canonical = ( w >> ( params.props - 1 - p ) ) & 1;
            if ( params.canonical_frame ? canonical : rng.chance( 0.5 ) )
                m.set_prop( w, prop_names[ p ] );
        }

    const std::size_t n_sets = std::size_t{ 1 } << n_worlds;
    auto set_of = [ & ]( std::size_t mask ) {
        WorldSet x( n_worlds );
        for ( std::size_t i = 0; i < n_worlds; ++i )
            if ( mask & ( std::size_t{ 1 } << i ) )
                x.set( i );
        return x;
    };

    const auto groups = all_groups( m.agents() );
    const double d = params.density;
    for ( std::size_t w = 0; w < n_worlds; ++w )
        for ( const auto& g : groups )
        {
            for ( std::size_t mask = 0; mask < n_sets; ++mask )
            {
                auto x = set_of( mask );
                if ( rng.chance( d ) )
                {
                    m.add( Neighborhood::Dabl, w, g, x );
                    if ( rng.chance( 0.5 ) )
                        m.add( Neighborhood::Conf, w, g, x );
                }
                else if ( rng.chance( d ) )
                    m.add( Neighborhood::Disc, w, g, x );
            }
            if ( !params.agency_tables )
                continue;

            std::set< WorldSet > brought;
            for ( std::size_t mask = 0; mask < n_sets; ++mask )
            {
                auto x = set_of( mask );
                if ( x.test( w ) && !x.all() && rng.chance( d / 2 ) )
                    brought.insert( x );
                if ( rng.chance( d / 2 ) )
                    m.add( Neighborhood::Attempts, w, g, x );
            }
            // Close under pairwise intersection; members all contain w, so
            // intersections do too and none of them is the full set.
            for ( bool grew = true; grew; )
            {
                grew = false;
                std::vector< WorldSet > fresh;
                for ( auto a = brought.begin(); a != brought.end(); ++a )
                    for ( auto b = std::next( a ); b != brought.end(); ++b )
                        if ( !brought.contains( *a & *b ) )
                            fresh.push_back( *a & *b );
                for ( auto& x : fresh )
                    grew |= brought.insert( std::move( x ) ).second;
            }
            for ( const auto& x : brought )
                m.add( Neighborhood::Brings, w, g, x );

            for ( std::size_t k = 0; k < 2; ++k )
                if ( rng.chance( d ) )
                {
                    auto objective = set_of( rng.below( n_sets ) );
                    auto deadline = set_of( rng.below( n_sets ) );
                    m.add_pair( k == 0 ? PairTable::Task : PairTable::Agree, w, g, std::move( objective ),
                                std::move( deadline ) );
                }
        }
    return m;
}

} // namespace deemed
