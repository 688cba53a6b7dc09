#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deemed/bitset.hpp"
#include "deemed/formula.hpp"

namespace deemed
{

/// Unary neighborhood tables. Dabl/Conf/Disc are the core triple; Brings (E)
/// and Attempts (Att) use the same membership reading.
enum class Neighborhood : std::uint8_t
{
    Dabl,
    Conf,
    Disc,
    Brings,
    Attempts,
};
inline constexpr std::size_t neighborhood_count = 5;

/// Binary tables keyed by (objective extension, deadline extension).
enum class PairTable : std::uint8_t
{
    Task,
    Agree,
};

[[nodiscard]] const char* to_string( Neighborhood n );
[[nodiscard]] const char* to_string( PairTable n );

/// Finite neighborhood model: worlds, a valuation, and per (world, group)
/// families of world-sets. Absent entries denote empty neighborhoods.
/// Unvalued propositions are false everywhere; the internal true atom is true
/// everywhere.
class SCModel
{
public:
    using Key = std::pair< std::size_t, Group >;
    using Table = std::map< Key, std::set< WorldSet > >;
    using PairSet = std::set< std::pair< WorldSet, WorldSet > >;
    using BinaryTable = std::map< Key, PairSet >;

    SCModel( std::vector< std::string > worlds, std::vector< AgentId > agents );

    [[nodiscard]] const std::vector< std::string >& worlds() const { return _worlds; }
    [[nodiscard]] std::size_t world_count() const { return _worlds.size(); }
    [[nodiscard]] std::optional< std::size_t > world_index( std::string_view id ) const;
    [[nodiscard]] const std::vector< AgentId >& agents() const { return _agents; }

    void set_prop( std::size_t world, const std::string& prop, bool value = true );
    void set_prop_extension( const std::string& prop, WorldSet extension );
    [[nodiscard]] WorldSet prop_extension( std::string_view prop ) const;
    [[nodiscard]] std::set< std::string > valuation( std::size_t world ) const;
    [[nodiscard]] const std::map< std::string, WorldSet, std::less<> >& prop_extensions() const { return _props; }

    void add( Neighborhood n, std::size_t world, const Group& g, WorldSet x );
    void remove( Neighborhood n, std::size_t world, const Group& g, const WorldSet& x );
    [[nodiscard]] bool contains( Neighborhood n, std::size_t world, const Group& g, const WorldSet& x ) const;
    [[nodiscard]] const std::set< WorldSet >& members( Neighborhood n, std::size_t world, const Group& g ) const;
    [[nodiscard]] const Table& table( Neighborhood n ) const { return _tables[ static_cast< std::size_t >( n ) ]; }

    void add_pair( PairTable n, std::size_t world, const Group& g, WorldSet objective, WorldSet deadline );
    [[nodiscard]] bool contains_pair( PairTable n, std::size_t world, const Group& g, const WorldSet& objective,
                                      const WorldSet& deadline ) const;
    [[nodiscard]] const BinaryTable& table( PairTable n ) const { return _pairs[ static_cast< std::size_t >( n ) ]; }

    /// Throws UnknownAgent if `g` has a member outside the declared agents.
    void check_group( const Group& g ) const;

    [[nodiscard]] WorldSet empty_set() const { return WorldSet( _worlds.size() ); }
    [[nodiscard]] WorldSet full_set() const { return WorldSet( _worlds.size(), true ); }

private:
    void check_world( std::size_t world ) const;
    void check_set( const WorldSet& x ) const;

    std::vector< std::string > _worlds;
    std::vector< AgentId > _agents;
    std::map< std::string, WorldSet, std::less<> > _props;
    std::array< Table, neighborhood_count > _tables;
    std::array< BinaryTable, 2 > _pairs;
};

struct PointedModel
{
    std::shared_ptr< const SCModel > model;
    std::size_t point = 0;
};

/// {w | M, w |= f}. Throws UnknownAgent for groups outside the model's agents.
[[nodiscard]] WorldSet extension( const SCModel& m, const Formula& f );
[[nodiscard]] bool eval_static( const SCModel& m, std::size_t world, const Formula& f );

enum class ModelConstraint
{
    ConfWithinDabl,    // conf(w)(G) ⊆ dabl(w)(G)
    DiscOutsideDabl,   // disc(w)(G) ∩ dabl(w)(G) = ∅
    NoTautologyBrought, // b1: W ∉ E(w)(G)
    AgencySucceeds,    // b2: X ∈ E(w)(G) ⇒ w ∈ X
    AgencyAggregates,  // b3: X, Y ∈ E(w)(G) ⇒ X ∩ Y ∈ E(w)(G)
};

[[nodiscard]] const char* to_string( ModelConstraint c );

struct ModelViolation
{
    ModelConstraint constraint;
    std::size_t world;
    Group group;
    WorldSet set;
    std::optional< WorldSet > other; // second member for aggregation failures
};

struct ValidationReport
{
    std::vector< ModelViolation > violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

[[nodiscard]] ValidationReport validate_sc_model( const SCModel& m );

/// `{w0,w2}` using the model's world ids.
[[nodiscard]] std::string describe_set( const SCModel& m, const WorldSet& x );
[[nodiscard]] std::string describe( const SCModel& m, const ModelViolation& v );

struct RandomModelParams
{
    std::size_t worlds = 3;
    std::size_t agents = 2;
    std::size_t props = 2;
    double density = 0.3;
    bool agency_tables = true;
    bool canonical_frame = false; // one world per valuation; `worlds` is ignored
};

/// Valid by construction: dabl is sampled first, conf from dabl's members,
/// disc from the complement, E from sets containing the world (then closed
/// under intersection).
[[nodiscard]] SCModel random_sc_model( std::uint64_t seed, const RandomModelParams& params );

} // namespace deemed
