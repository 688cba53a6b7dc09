#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "deemed/formula.hpp"

namespace deemed
{

/// Deterministic generator. Draws go through raw 64-bit outputs only, so
/// sequences are identical across standard library implementations.
class Rng
{
public:
    explicit Rng( std::uint64_t seed ) : _engine{ seed } {}

    std::uint64_t next() { return _engine(); }
    /// Uniform in [0, n); n > 0.
    std::size_t below( std::size_t n );
    /// Bernoulli(p).
    bool chance( double p );

    template < typename T >
    const T& pick( std::span< const T > items )
    {
        return items[ below( items.size() ) ];
    }
    template < typename T >
    const T& pick( const std::vector< T >& items )
    {
        return items[ below( items.size() ) ];
    }

private:
    std::mt19937_64 _engine;
};

/// Sub-seed for item `index` of a run seeded with `seed` (splitmix64).
[[nodiscard]] std::uint64_t derive_seed( std::uint64_t seed, std::uint64_t index );

struct FormulaShape
{
    std::vector< std::string > props;
    std::vector< AgentId > agents;
    int max_depth = 3;
    bool modalities = true;
    bool agency_modalities = true;
    bool sugar = true; // emit Or / Implies / Top / Bottom
};

[[nodiscard]] Formula random_static_formula( Rng& rng, const FormulaShape& shape );

/// A classically equivalent rewrite of a propositional formula (double
/// negation, De Morgan, commutation, absorption of tautological/contradictory
/// padding, implication unfolding). Non-propositional subformulas are left
/// as they are.
[[nodiscard]] Formula random_equivalent( Rng& rng, const Formula& f, const std::vector< std::string >& pad_props );

} // namespace deemed
