#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace deemed
{

/// Fixed-width dynamic bitset. Used both for world-sets (extensions,
/// neighborhood members) and for truth tables of propositional formulas.
class Bitset
{
public:
    Bitset() = default;
    explicit Bitset( std::size_t size, bool value = false );

    [[nodiscard]] std::size_t size() const { return _size; }
    [[nodiscard]] bool test( std::size_t i ) const;
    void set( std::size_t i, bool value = true );

    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool none() const;
    [[nodiscard]] bool all() const;
    [[nodiscard]] bool is_subset_of( const Bitset& other ) const;

    Bitset& operator&=( const Bitset& other );
    Bitset& operator|=( const Bitset& other );
    [[nodiscard]] Bitset operator~() const;
    friend Bitset operator&( Bitset a, const Bitset& b ) { return a &= b; }
    friend Bitset operator|( Bitset a, const Bitset& b ) { return a |= b; }

    friend bool operator==( const Bitset&, const Bitset& ) = default;
    friend std::strong_ordering operator<=>( const Bitset& a, const Bitset& b );

    /// Indices of set bits, ascending.
    [[nodiscard]] std::vector< std::size_t > members() const;

    /// Big-endian hex, bit 0 is the least significant nibble bit. Width is
    /// ceil(size/4) digits so equal-size sets always print with equal width.
    [[nodiscard]] std::string to_hex() const;

    [[nodiscard]] std::size_t hash() const;

private:
    void trim();

    std::size_t _size = 0;
    std::vector< std::uint64_t > _words;
};

using WorldSet = Bitset;

} // namespace deemed
