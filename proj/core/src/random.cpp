#include "deemed/random.hpp"

#include <array>
#include <cassert>
#include <limits>

namespace deemed
{

std::size_t Rng::below( std::size_t n )
{
    assert( n > 0 );
    // Rejection sampling for an unbiased draw.
    const std::uint64_t limit = std::numeric_limits< std::uint64_t >::max() -
                                std::numeric_limits< std::uint64_t >::max() % n;
    std::uint64_t x;
    do
        x = _engine();
    while ( x >= limit );
    return static_cast< std::size_t >( x % n );
}

bool Rng::chance( double p )
{
    if ( p <= 0.0 )
        return false;
    if ( p >= 1.0 )
        return true;
    return static_cast< double >( _engine() >> 11 ) * 0x1.0p-53 < p;
}

std::uint64_t derive_seed( std::uint64_t seed, std::uint64_t index )
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * ( index + 1 );
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
    return z ^ ( z >> 31 );
}

namespace
{

Group random_group( Rng& rng, const std::vector< AgentId >& agents )
{
    std::vector< AgentId > members;
    for ( const auto& a : agents )
        if ( rng.chance( 0.5 ) )
            members.push_back( a );
    return Group{ std::move( members ) };
}

Formula random_formula( Rng& rng, const FormulaShape& shape, int depth )
{
    const bool leaf = depth <= 0 || rng.chance( 0.25 );
    if ( leaf || shape.props.empty() )
    {
        if ( shape.sugar && rng.chance( 0.08 ) )
            return rng.chance( 0.5 ) ? Formula::top() : Formula::bottom();
        if ( shape.props.empty() )
            return Formula::top();
        return Formula::prop( rng.pick( shape.props ) );
    }

    std::array< int, 11 > choices{ 0, 1, 1 }; // not, and
    std::size_t n = 3;
    auto offer = [ & ]( std::initializer_list< int > ops ) {
        for ( int op : ops )
            choices[ n++ ] = op;
    };
    if ( shape.sugar )
        offer( { 2, 3 } ); // or, implies
    if ( shape.modalities && !shape.agents.empty() )
    {
        offer( { 4, 5, 6 } ); // dabl conf disc
        if ( shape.agency_modalities )
            offer( { 7, 8, 9 } ); // E Att Task/Agree
    }
    switch ( choices[ rng.below( n ) ] )
    {
    case 0: return Formula::lnot( random_formula( rng, shape, depth - 1 ) );
    case 1:
    {
        auto a = random_formula( rng, shape, depth - 1 );
        return Formula::land( std::move( a ), random_formula( rng, shape, depth - 1 ) );
    }
    case 2:
    {
        auto a = random_formula( rng, shape, depth - 1 );
        return Formula::lor( std::move( a ), random_formula( rng, shape, depth - 1 ) );
    }
    case 3:
    {
        auto a = random_formula( rng, shape, depth - 1 );
        return Formula::implies( std::move( a ), random_formula( rng, shape, depth - 1 ) );
    }
    case 4: return Formula::dabl( random_group( rng, shape.agents ), random_formula( rng, shape, depth - 1 ) );
    case 5: return Formula::conf( random_group( rng, shape.agents ), random_formula( rng, shape, depth - 1 ) );
    case 6: return Formula::disc( random_group( rng, shape.agents ), random_formula( rng, shape, depth - 1 ) );
    case 7: return Formula::brings( random_group( rng, shape.agents ), random_formula( rng, shape, depth - 1 ) );
    case 8: return Formula::attempts( random_group( rng, shape.agents ), random_formula( rng, shape, depth - 1 ) );
    default:
    {
        auto g = random_group( rng, shape.agents );
        auto objective = random_formula( rng, shape, depth - 1 );
        auto deadline = random_formula( rng, shape, depth - 1 );
        return Formula::modal( rng.chance( 0.5 ) ? StaticOp::Task : StaticOp::Agree, std::move( g ),
                               std::move( objective ), std::move( deadline ) );
    }
    }
}

} // namespace

Formula random_static_formula( Rng& rng, const FormulaShape& shape )
{
    return random_formula( rng, shape, shape.max_depth );
}

Formula random_equivalent( Rng& rng, const Formula& f, const std::vector< std::string >& pad_props )
{
    auto rewrite_children = [ & ]( const Formula& g ) -> Formula {
        switch ( g.op() )
        {
        case StaticOp::Not: return Formula::lnot( random_equivalent( rng, g.arg(), pad_props ) );
        case StaticOp::And:
            return Formula::land( random_equivalent( rng, g.arg( 0 ), pad_props ),
                                  random_equivalent( rng, g.arg( 1 ), pad_props ) );
        case StaticOp::Or:
            return Formula::lor( random_equivalent( rng, g.arg( 0 ), pad_props ),
                                 random_equivalent( rng, g.arg( 1 ), pad_props ) );
        case StaticOp::Implies:
            return Formula::implies( random_equivalent( rng, g.arg( 0 ), pad_props ),
                                     random_equivalent( rng, g.arg( 1 ), pad_props ) );
        default: return g;
        }
    };

    if ( is_modality( f.op() ) )
        return f;

    auto g = rewrite_children( f );
    switch ( rng.below( 8 ) )
    {
    case 0: return Formula::lnot( Formula::lnot( g ) );
    case 1:
        if ( g.op() == StaticOp::And )
            return Formula::land( g.arg( 1 ), g.arg( 0 ) );
        if ( g.op() == StaticOp::Or )
            return Formula::lor( g.arg( 1 ), g.arg( 0 ) );
        return g;
    case 2:
        if ( g.op() == StaticOp::And ) // De Morgan
            return Formula::lnot( Formula::lor( Formula::lnot( g.arg( 0 ) ), Formula::lnot( g.arg( 1 ) ) ) );
        if ( g.op() == StaticOp::Or )
            return Formula::lnot( Formula::land( Formula::lnot( g.arg( 0 ) ), Formula::lnot( g.arg( 1 ) ) ) );
        return g;
    case 3:
        if ( g.op() == StaticOp::Implies )
            return Formula::lor( Formula::lnot( g.arg( 0 ) ), g.arg( 1 ) );
        return Formula::land( g, Formula::top() );
    case 4: return Formula::lor( g, Formula::bottom() );
    case 5:
        if ( !pad_props.empty() )
        {
            auto p = Formula::prop( rng.pick( pad_props ) );
            return Formula::lor( g, Formula::land( p, Formula::lnot( p ) ) );
        }
        return g;
    case 6:
        if ( !pad_props.empty() )
        {
            auto p = Formula::prop( rng.pick( pad_props ) );
            return Formula::land( Formula::lor( Formula::lnot( p ), p ), g );
        }
        return g;
    default: return g;
    }
}

} // namespace deemed
