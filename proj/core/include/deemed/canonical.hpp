#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deemed/bitset.hpp"
#include "deemed/formula.hpp"

namespace deemed
{

/// Finite, sorted, duplicate-free set of proposition names that fixes the
/// truth-table carrier for canonical keys.
class Universe
{
public:
    static constexpr std::size_t max_props = 16;

    Universe() = default;
    explicit Universe( std::vector< std::string > props );

    [[nodiscard]] const std::vector< std::string >& props() const { return _props; }
    [[nodiscard]] std::size_t size() const { return _props.size(); }
    [[nodiscard]] std::size_t valuation_count() const { return std::size_t{ 1 } << _props.size(); }
    [[nodiscard]] std::optional< std::size_t > index_of( std::string_view prop ) const;

    /// Index of the valuation in lexicographic order: the first proposition
    /// is the most significant bit.
    [[nodiscard]] std::size_t valuation_index( const std::set< std::string >& true_props ) const;
    [[nodiscard]] bool holds( std::size_t valuation, std::size_t prop ) const;
    [[nodiscard]] std::set< std::string > valuation( std::size_t index ) const;

    /// Truth table of a single proposition.
    [[nodiscard]] Bitset prop_table( std::size_t prop ) const;

    friend bool operator==( const Universe&, const Universe& ) = default;

private:
    std::vector< std::string > _props;
};

/// Truth table of a propositional formula over a Universe: bit i is the
/// formula's value under valuation i.
class CanonicalKey
{
public:
    CanonicalKey() = default;
    explicit CanonicalKey( Bitset bits ) : _bits{ std::move( bits ) } {}

    [[nodiscard]] const Bitset& bits() const { return _bits; }
    [[nodiscard]] bool is_tautology() const { return _bits.all(); }
    [[nodiscard]] bool is_contradiction() const { return _bits.none(); }
    [[nodiscard]] std::string str() const { return "0x" + _bits.to_hex(); }

    friend CanonicalKey operator&( const CanonicalKey& a, const CanonicalKey& b )
    {
        return CanonicalKey{ a._bits & b._bits };
    }

    friend bool operator==( const CanonicalKey&, const CanonicalKey& ) = default;
    friend auto operator<=>( const CanonicalKey&, const CanonicalKey& ) = default;

private:
    Bitset _bits;
};

/// Throws NotPropositional if `f` contains a modality and OutOfUniverse if
/// it mentions a proposition outside `u`.
[[nodiscard]] CanonicalKey canonical_key( const Formula& f, const Universe& u );

[[nodiscard]] bool equivalent( const Formula& f, const Formula& g, const Universe& u );

/// A formula denoting `key`: a literal or a pair of literals when one
/// fits, else disjunctive normal form; `T` and `_|_` at the extremes.
[[nodiscard]] Formula formula_for_key( const CanonicalKey& key, const Universe& u );

} // namespace deemed
