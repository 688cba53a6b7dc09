#include <gtest/gtest.h>

#include "deemed/canonical.hpp"
#include "deemed/error.hpp"
#include "deemed/random.hpp"
#include "deemed/syntax.hpp"
#include "oracles.hpp"

using namespace deemed;

namespace
{

const Universe pq{ { "p", "q" } };

CanonicalKey key( const char* text, const Universe& u = pq ) { return canonical_key( parse_static( text ), u ); }

} // namespace

TEST( Universe, SortedAndCapped )
{
    Universe u{ { "q", "p" } };
    EXPECT_EQ( u.props(), ( std::vector< std::string >{ "p", "q" } ) );
    EXPECT_THROW( ( Universe{ { "p", "p" } } ), FormatError );
    std::vector< std::string > many;
    for ( int i = 0; i < 17; ++i )
        many.push_back( "x" + std::to_string( i ) );
    EXPECT_THROW( Universe{ many }, CapExceeded );
    many.pop_back();
    EXPECT_EQ( Universe{ many }.valuation_count(), 65536u );
}

TEST( Universe, FirstPropositionIsMostSignificant )
{
    EXPECT_EQ( pq.valuation_index( {} ), 0u );
    EXPECT_EQ( pq.valuation_index( { "q" } ), 1u );
    EXPECT_EQ( pq.valuation_index( { "p" } ), 2u );
    EXPECT_EQ( pq.valuation( 3 ), ( std::set< std::string >{ "p", "q" } ) );
    EXPECT_THROW( ( void )pq.valuation_index( { "r" } ), OutOfUniverse );
}

TEST( CanonicalKey, Examples )
{
    EXPECT_EQ( key( "p & q" ), key( "q & p" ) );
    EXPECT_EQ( key( "p" ), key( "!!p" ) );
    EXPECT_EQ( key( "p" ), key( "p | (q & !q)" ) );
    EXPECT_NE( key( "p" ), key( "q" ) );
    EXPECT_TRUE( key( "T" ).is_tautology() );
    EXPECT_TRUE( key( "_|_" ).is_contradiction() );
    EXPECT_TRUE( key( "p | !p" ).is_tautology() );
    EXPECT_EQ( key( "p" ).str(), "0xc" );
}

TEST( CanonicalKey, Errors )
{
    EXPECT_THROW( ( void )key( "Dabl{a} p" ), NotPropositional );
    EXPECT_THROW( ( void )key( "p & E{a} q" ), NotPropositional );
    EXPECT_THROW( ( void )key( "r" ), OutOfUniverse );
}

TEST( Equivalent, Examples )
{
    EXPECT_TRUE( equivalent( parse_static( "p -> q" ), parse_static( "!p | q" ), pq ) );
    EXPECT_FALSE( equivalent( parse_static( "p" ), parse_static( "q" ), pq ) );
}

TEST( Equivalent, AgreesWithBruteForceEnumeration )
{
    const Universe u{ { "p", "q", "r" } };
    Rng rng{ 99 };
    FormulaShape shape{ u.props(), {}, 3, false, false, true };
    int equal = 0;
    for ( int i = 0; i < 200; ++i )
    {
        auto f = random_static_formula( rng, shape );
        auto g = rng.chance( 0.5 ) ? random_equivalent( rng, f, u.props() ) : random_static_formula( rng, shape );
        const bool expected = oracle::brute_equivalent( f, g, u.props() );
        equal += expected;
        EXPECT_EQ( equivalent( f, g, u ), expected ) << print_static( f ) << " vs " << print_static( g );
    }
    EXPECT_GT( equal, 50 );
}

TEST( CanonicalKey, BitsMatchValuationEnumeration )
{
    const Universe u{ { "p", "q", "r" } };
    Rng rng{ 5 };
    FormulaShape shape{ u.props(), {}, 3, false, false, true };
    for ( int i = 0; i < 100; ++i )
    {
        auto f = random_static_formula( rng, shape );
        auto k = canonical_key( f, u );
        for ( std::size_t v = 0; v < u.valuation_count(); ++v )
            EXPECT_EQ( k.bits().test( v ), oracle::holds_prop( f, u.valuation( v ) ) );
    }
}

TEST( RandomEquivalent, PreservesEquivalence )
{
    const Universe u{ { "p", "q", "r" } };
    Rng rng{ 17 };
    FormulaShape shape{ u.props(), {}, 3, false, false, true };
    for ( int i = 0; i < 300; ++i )
    {
        auto f = random_static_formula( rng, shape );
        auto g = random_equivalent( rng, f, u.props() );
        EXPECT_TRUE( oracle::brute_equivalent( f, g, u.props() ) ) << print_static( f ) << " vs " << print_static( g );
    }
}

TEST( FormulaForKey, DenotesTheKey )
{
    const Universe u{ { "p", "q", "r" } };
    for ( std::size_t mask = 0; mask < 256; ++mask )
    {
        Bitset b( 8 );
        for ( std::size_t i = 0; i < 8; ++i )
            if ( mask & ( std::size_t{ 1 } << i ) )
                b.set( i );
        CanonicalKey k{ b };
        EXPECT_EQ( canonical_key( formula_for_key( k, u ), u ), k );
    }
    EXPECT_EQ( print_static( formula_for_key( canonical_key( parse_static( "p" ), u ), u ) ), "p" );
    EXPECT_EQ( print_static( formula_for_key( canonical_key( parse_static( "!q" ), u ), u ) ), "!q" );
}
