#include "deemed/temporal_model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "deemed/canonical.hpp"
#include "deemed/error.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

TraceModel::TraceModel( std::vector< PointedModel > instants, bool allow_invalid )
    : _instants{ std::move( instants ) }
{
    if ( _instants.empty() )
        throw FormatError{ "a trace needs at least one instant" };
    for ( std::size_t t = 0; t < _instants.size(); ++t )
    {
        const auto& pm = _instants[ t ];
        if ( !pm.model )
            throw FormatError{ "instant " + std::to_string( t ) + " has no model" };
        if ( pm.point >= pm.model->world_count() )
            throw FormatError{ "instant " + std::to_string( t ) + " points outside its model" };
        if ( !allow_invalid )
        {
            auto report = validate_sc_model( *pm.model );
            if ( !report.ok() )
                throw InvalidModel{ "instant " + std::to_string( t ) + ": " + describe( *pm.model, report.violations[ 0 ] ) };
        }
    }
}

std::vector< AgentId > TraceModel::agents() const
{
    std::set< AgentId > all;
    for ( const auto& pm : _instants )
        all.insert( pm.model->agents().begin(), pm.model->agents().end() );
    return { all.begin(), all.end() };
}

bool TraceModel::shared_frame() const
{
    const auto& first = *_instants.front().model;
    return std::all_of( _instants.begin(), _instants.end(), [ & ]( const PointedModel& pm ) {
        return pm.model->worlds() == first.worlds() && pm.model->prop_extensions() == first.prop_extensions();
    } );
}

std::vector< bool > eval_trace( const TraceModel& tm, const TemporalFormula& f )
{
    const auto n = tm.length();
    std::vector< bool > out( n, false );
    switch ( f.op() )
    {
    case TemporalOp::Mono:
        for ( std::size_t t = 0; t < n; ++t )
            out[ t ] = eval_static( *tm.at( t ).model, tm.at( t ).point, f.leaf() );
        return out;
    case TemporalOp::Not:
    {
        auto a = eval_trace( tm, f.arg() );
        for ( std::size_t t = 0; t < n; ++t )
            out[ t ] = !a[ t ];
        return out;
    }
    case TemporalOp::And:
    {
        auto a = eval_trace( tm, f.arg( 0 ) );
        auto b = eval_trace( tm, f.arg( 1 ) );
        for ( std::size_t t = 0; t < n; ++t )
            out[ t ] = a[ t ] && b[ t ];
        return out;
    }
    case TemporalOp::Until:
    {
        // a U b at t: some s > t has b, and a holds strictly between.
        auto a = eval_trace( tm, f.arg( 0 ) );
        auto b = eval_trace( tm, f.arg( 1 ) );
        for ( std::size_t t = n - 1; t-- > 0; )
            out[ t ] = b[ t + 1 ] || ( a[ t + 1 ] && out[ t + 1 ] );
        return out;
    }
    case TemporalOp::Since:
    {
        auto a = eval_trace( tm, f.arg( 0 ) );
        auto b = eval_trace( tm, f.arg( 1 ) );
        for ( std::size_t t = 1; t < n; ++t )
            out[ t ] = b[ t - 1 ] || ( a[ t - 1 ] && out[ t - 1 ] );
        return out;
    }
    }
    return out;
}

bool eval_temporal( const TraceModel& tm, std::size_t t, const TemporalFormula& f )
{
    if ( t >= tm.length() )
        throw InstantOutOfRange{ "instant " + std::to_string( t ) + " is outside 0.." + std::to_string( tm.length() - 1 ) };
    return eval_trace( tm, f )[ t ];
}

const char* to_string( DAConstraint c )
{
    switch ( c )
    {
    case DAConstraint::C1: return "C1";
    case DAConstraint::C2: return "C2";
    case DAConstraint::C3: return "C3";
    }
    return "?";
}

const char* to_string( DAAxiom a )
{
    switch ( a )
    {
    case DAAxiom::lbda1: return "lbda1";
    case DAAxiom::lbda2: return "lbda2";
    case DAAxiom::lbda3: return "lbda3";
    }
    return "?";
}

namespace
{

void require_common_worlds( const TraceModel& tm )
{
    const auto& worlds = tm.at( 0 ).model->worlds();
    for ( std::size_t t = 1; t < tm.length(); ++t )
        if ( tm.at( t ).model->worlds() != worlds )
            throw FrameMismatch{ "instant " + std::to_string( t ) + " uses a different world list than instant 0" };
}

} // namespace

std::vector< WorldSet > tracked_objectives( const TraceModel& tm )
{
    require_common_worlds( tm );
    std::set< WorldSet > all;
    for ( const auto& pm : tm.instants() )
        for ( auto n : { Neighborhood::Dabl, Neighborhood::Conf, Neighborhood::Disc } )
            for ( const auto& [ key, sets ] : pm.model->table( n ) )
                if ( key.first == pm.point )
                    all.insert( sets.begin(), sets.end() );
    return { all.begin(), all.end() };
}

DAValidationReport validate_da_model( const TraceModel& tm )
{
    const auto objectives = tracked_objectives( tm );
    const auto agents = tm.agents();
    if ( agents.size() > max_validated_agents )
        throw CapExceeded{ "validation enumerates all groups and supports at most " +
                           std::to_string( max_validated_agents ) + " agents" };
    const auto groups = all_groups( agents );
    const auto n = tm.length();

    auto holds = [ & ]( Neighborhood table, std::size_t t, const Group& g, const WorldSet& x ) {
        const auto& pm = tm.at( t );
        return pm.model->contains( table, pm.point, g, x );
    };

    DAValidationReport report;
    for ( std::size_t t = 0; t < n; ++t )
        for ( const auto& g : groups )
            for ( const auto& x : objectives )
            {
                const bool dabl = holds( Neighborhood::Dabl, t, g, x );
                if ( dabl )
                {
                    // C1: Dabl persists on (t, t') up to a Disc at t', or forever.
                    for ( std::size_t s = t + 1; s < n; ++s )
                    {
                        if ( holds( Neighborhood::Disc, s, g, x ) )
                            break;
                        if ( !holds( Neighborhood::Dabl, s, g, x ) )
                        {
                            report.violations.push_back(
                                { DAConstraint::C1, t, g, x,
                                  "t'=" + std::to_string( s ) + " drops Dabl without a Disc" } );
                            break;
                        }
                    }
                    // C3: Conf now, or a past Conf with Dabl ever since.
                    if ( !holds( Neighborhood::Conf, t, g, x ) )
                    {
                        std::optional< std::string > failure = "no Conf at or before t";
                        for ( std::size_t s = t; s-- > 0; )
                        {
                            if ( holds( Neighborhood::Conf, s, g, x ) )
                            {
                                failure.reset();
                                break;
                            }
                            if ( !holds( Neighborhood::Dabl, s, g, x ) )
                            {
                                failure = "t'=" + std::to_string( s ) + " has neither Dabl nor Conf";
                                break;
                            }
                        }
                        if ( failure )
                            report.violations.push_back( { DAConstraint::C3, t, g, x, *failure } );
                    }
                }
                else
                {
                    // C2: !Dabl persists on (t, t') up to a Conf at t', or forever.
                    for ( std::size_t s = t + 1; s < n; ++s )
                    {
                        if ( holds( Neighborhood::Conf, s, g, x ) )
                            break;
                        if ( holds( Neighborhood::Dabl, s, g, x ) )
                        {
                            report.violations.push_back(
                                { DAConstraint::C2, t, g, x,
                                  "t'=" + std::to_string( s ) + " gains Dabl without a Conf" } );
                            break;
                        }
                    }
                }
            }

    std::stable_sort( report.violations.begin(), report.violations.end(),
                      []( const DAViolation& a, const DAViolation& b ) { return a.instant < b.instant; } );
    return report;
}

std::optional< Formula > objective_formula( const TraceModel& tm, const WorldSet& x )
{
    const auto& first = *tm.at( 0 ).model;
    std::vector< std::string > names;
    for ( const auto& [ p, ext ] : first.prop_extensions() )
        names.push_back( p );
    if ( names.size() > Universe::max_props )
        return std::nullopt;
    const Universe u{ names };

    // Worlds sharing a valuation cannot be separated by a propositional formula.
    Bitset key( u.valuation_count() );
    Bitset seen( u.valuation_count() );
    for ( std::size_t w = 0; w < first.world_count(); ++w )
    {
        const auto v = u.valuation_index( first.valuation( w ) );
        if ( seen.test( v ) && key.test( v ) != x.test( w ) )
            return std::nullopt;
        seen.set( v );
        key.set( v, x.test( w ) );
    }
    auto f = formula_for_key( CanonicalKey{ key }, u );
    // formula_for_key prefers short forms that may disagree on valuations no
    // world uses; that is harmless, but check the extension everywhere.
    for ( const auto& pm : tm.instants() )
        if ( pm.model->worlds().size() != x.size() || extension( *pm.model, f ) != x )
            return std::nullopt;
    return f;
}

std::string describe_objective( const TraceModel& tm, const WorldSet& x )
{
    if ( auto f = objective_formula( tm, x ) )
        return print_static( *f );
    return describe_set( *tm.at( 0 ).model, x );
}

std::string describe( const TraceModel& tm, const DAViolation& v )
{
    return std::string{ to_string( v.constraint ) } + " t=" + std::to_string( v.instant ) + " G=" + v.group.str() +
           " phi=" + describe_objective( tm, v.objective ) + " witness=" + v.witness;
}

TemporalFormula axiom_instance( DAAxiom a, const Group& g, const Formula& objective )
{
    using TF = TemporalFormula;
    auto dabl = TF::mono( Formula::dabl( g, objective ) );
    auto conf = TF::mono( Formula::conf( g, objective ) );
    auto disc = TF::mono( Formula::disc( g, objective ) );
    switch ( a )
    {
    case DAAxiom::lbda1: return TF::implies( dabl, TF::weak_until( dabl, disc ) );
    case DAAxiom::lbda2: return TF::implies( TF::lnot( dabl ), TF::weak_until( TF::lnot( dabl ), conf ) );
    case DAAxiom::lbda3: return TF::implies( dabl, TF::lor( conf, TF::since( dabl, conf ) ) );
    }
    return dabl;
}

std::vector< bool > axiom_check( const TraceModel& tm, DAAxiom a, const Group& g, const Formula& objective )
{
    return eval_trace( tm, axiom_instance( a, g, objective ) );
}

} // namespace deemed
