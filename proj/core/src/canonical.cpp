#include "deemed/canonical.hpp"

#include <algorithm>

#include "deemed/error.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

Universe::Universe( std::vector< std::string > props )
    : _props{ std::move( props ) }
{
    std::sort( _props.begin(), _props.end() );
    if ( std::adjacent_find( _props.begin(), _props.end() ) != _props.end() )
        throw FormatError{ "universe contains duplicate propositions" };
    if ( _props.size() > max_props )
        throw CapExceeded{ "universe has " + std::to_string( _props.size() ) + " propositions, at most " +
                           std::to_string( max_props ) + " are supported" };
}

std::optional< std::size_t > Universe::index_of( std::string_view prop ) const
{
    auto it = std::lower_bound( _props.begin(), _props.end(), prop );
    if ( it == _props.end() || *it != prop )
        return std::nullopt;
    return static_cast< std::size_t >( it - _props.begin() );
}

std::size_t Universe::valuation_index( const std::set< std::string >& true_props ) const
{
    std::size_t index = 0;
    for ( const auto& p : true_props )
    {
        auto i = index_of( p );
        if ( !i )
            throw OutOfUniverse{ "proposition '" + p + "' is not in the universe" };
        index |= std::size_t{ 1 } << ( _props.size() - 1 - *i );
    }
    return index;
}

bool Universe::holds( std::size_t valuation, std::size_t prop ) const
{
    return ( valuation >> ( _props.size() - 1 - prop ) ) & 1U;
}

std::set< std::string > Universe::valuation( std::size_t index ) const
{
    std::set< std::string > out;
    for ( std::size_t p = 0; p < _props.size(); ++p )
        if ( holds( index, p ) )
            out.insert( _props[ p ] );
    return out;
}

Bitset Universe::prop_table( std::size_t prop ) const
{
    Bitset out( valuation_count() );
    for ( std::size_t v = 0; v < valuation_count(); ++v )
        if ( holds( v, prop ) )
            out.set( v );
    return out;
}

namespace
{

Bitset table( const Formula& f, const Universe& u )
{
    switch ( f.op() )
    {
    case StaticOp::Prop:
    {
        if ( f.name() == true_atom )
            return Bitset( u.valuation_count(), true );
        auto i = u.index_of( f.name() );
        if ( !i )
            throw OutOfUniverse{ "proposition '" + f.name() + "' is not in the universe" };
        return u.prop_table( *i );
    }
    case StaticOp::Top:
        return Bitset( u.valuation_count(), true );
    case StaticOp::Bottom:
        return Bitset( u.valuation_count(), false );
    case StaticOp::Not:
        return ~table( f.arg(), u );
    case StaticOp::And:
        return table( f.arg( 0 ), u ) & table( f.arg( 1 ), u );
    case StaticOp::Or:
        return table( f.arg( 0 ), u ) | table( f.arg( 1 ), u );
    case StaticOp::Implies:
        return ~table( f.arg( 0 ), u ) | table( f.arg( 1 ), u );
    default:
        throw NotPropositional{ "objective '" + print_static( f ) + "' contains a modality" };
    }
}

} // namespace

CanonicalKey canonical_key( const Formula& f, const Universe& u )
{
    return CanonicalKey{ table( f, u ) };
}

bool equivalent( const Formula& f, const Formula& g, const Universe& u )
{
    return canonical_key( f, u ) == canonical_key( g, u );
}

Formula formula_for_key( const CanonicalKey& key, const Universe& u )
{
    if ( key.is_tautology() )
        return Formula::top();
    if ( key.is_contradiction() )
        return Formula::bottom();

    std::vector< std::pair< Formula, Bitset > > literals;
    for ( std::size_t p = 0; p < u.size(); ++p )
    {
        auto table = u.prop_table( p );
        literals.emplace_back( Formula::prop( u.props()[ p ] ), table );
        literals.emplace_back( Formula::lnot( Formula::prop( u.props()[ p ] ) ), ~table );
    }
    for ( const auto& [ f, t ] : literals )
        if ( t == key.bits() )
            return f;
    for ( std::size_t i = 0; i < literals.size(); ++i )
        for ( std::size_t j = i + 1; j < literals.size(); ++j )
        {
            const auto& [ f, a ] = literals[ i ];
            const auto& [ g, b ] = literals[ j ];
            if ( ( a & b ) == key.bits() )
                return Formula::land( f, g );
            if ( ( a | b ) == key.bits() )
                return Formula::lor( f, g );
        }

    std::optional< Formula > disjunction;
    for ( auto v : key.bits().members() )
    {
        std::optional< Formula > conj;
        for ( std::size_t p = 0; p < u.size(); ++p )
        {
            auto lit = Formula::prop( u.props()[ p ] );
            if ( !u.holds( v, p ) )
                lit = Formula::lnot( std::move( lit ) );
            conj = conj ? Formula::land( std::move( *conj ), std::move( lit ) ) : std::move( lit );
        }
        disjunction = disjunction ? Formula::lor( std::move( *disjunction ), std::move( *conj ) ) : std::move( *conj );
    }
    return *disjunction;
}

} // namespace deemed
