#include "deemed/bitset.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace deemed
{

Bitset::Bitset( std::size_t size, bool value )
    : _size{ size }, _words( ( size + 63 ) / 64, value ? ~std::uint64_t{ 0 } : 0 )
{
    trim();
}

bool Bitset::test( std::size_t i ) const
{
    assert( i < _size );
    return ( _words[ i / 64 ] >> ( i % 64 ) ) & 1U;
}

void Bitset::set( std::size_t i, bool value )
{
    assert( i < _size );
    const auto mask = std::uint64_t{ 1 } << ( i % 64 );
    if ( value )
        _words[ i / 64 ] |= mask;
    else
        _words[ i / 64 ] &= ~mask;
}

std::size_t Bitset::count() const
{
    std::size_t n = 0;
    for ( auto w : _words )
        n += static_cast< std::size_t >( std::popcount( w ) );
    return n;
}

bool Bitset::none() const
{
    return std::all_of( _words.begin(), _words.end(), []( auto w ) { return w == 0; } );
}

bool Bitset::all() const
{
    return count() == _size;
}

bool Bitset::is_subset_of( const Bitset& other ) const
{
    assert( _size == other._size );
    for ( std::size_t i = 0; i < _words.size(); ++i )
        if ( ( _words[ i ] & ~other._words[ i ] ) != 0 )
            return false;
    return true;
}

Bitset& Bitset::operator&=( const Bitset& other )
{
    assert( _size == other._size );
    for ( std::size_t i = 0; i < _words.size(); ++i )
        _words[ i ] &= other._words[ i ];
    return *this;
}

Bitset& Bitset::operator|=( const Bitset& other )
{
    assert( _size == other._size );
    for ( std::size_t i = 0; i < _words.size(); ++i )
        _words[ i ] |= other._words[ i ];
    return *this;
}

Bitset Bitset::operator~() const
{
    Bitset out = *this;
    for ( auto& w : out._words )
        w = ~w;
    out.trim();
    return out;
}

std::strong_ordering operator<=>( const Bitset& a, const Bitset& b )
{
    if ( auto c = a._size <=> b._size; c != 0 )
        return c;
    // Compare from the most significant word so the order matches numeric
    // order of the truth-table reading.
    for ( std::size_t i = a._words.size(); i-- > 0; )
        if ( auto c = a._words[ i ] <=> b._words[ i ]; c != 0 )
            return c;
    return std::strong_ordering::equal;
}

std::vector< std::size_t > Bitset::members() const
{
    std::vector< std::size_t > out;
    for ( std::size_t i = 0; i < _size; ++i )
        if ( test( i ) )
            out.push_back( i );
    return out;
}

std::string Bitset::to_hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t nibbles = std::max< std::size_t >( 1, ( _size + 3 ) / 4 );
    std::string out( nibbles, '0' );
    for ( std::size_t k = 0; k < nibbles; ++k )
    {
        unsigned v = 0;
        for ( std::size_t b = 0; b < 4; ++b )
        {
            const auto i = k * 4 + b;
            if ( i < _size && test( i ) )
                v |= 1U << b;
        }
        out[ nibbles - 1 - k ] = digits[ v ];
    }
    return out;
}

std::size_t Bitset::hash() const
{
    std::size_t h = std::hash< std::size_t >{}( _size );
    for ( auto w : _words )
        h ^= std::hash< std::uint64_t >{}( w ) + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
    return h;
}

void Bitset::trim()
{
    if ( _size % 64 != 0 && !_words.empty() )
        _words.back() &= ( std::uint64_t{ 1 } << ( _size % 64 ) ) - 1;
}

} // namespace deemed
