#include "deemed/formula.hpp"

#include <cassert>

#include "deemed/error.hpp"

namespace deemed
{

struct Formula::Node
{
    StaticOp op;
    std::string name;
    Group group;
    std::vector< Formula > args;
};

bool is_modality( StaticOp op )
{
    switch ( op )
    {
    case StaticOp::Dabl:
    case StaticOp::Conf:
    case StaticOp::Disc:
    case StaticOp::Brings:
    case StaticOp::Attempts:
    case StaticOp::Task:
    case StaticOp::Agree:
        return true;
    default:
        return false;
    }
}

bool is_binary_modality( StaticOp op )
{
    return op == StaticOp::Task || op == StaticOp::Agree;
}

Formula Formula::prop( std::string name )
{
    return Formula{ std::make_shared< const Node >( Node{ StaticOp::Prop, std::move( name ), {}, {} } ) };
}

Formula Formula::top()
{
    static const Formula f{ std::make_shared< const Node >( Node{ StaticOp::Top, {}, {}, {} } ) };
    return f;
}

Formula Formula::bottom()
{
    static const Formula f{ std::make_shared< const Node >( Node{ StaticOp::Bottom, {}, {}, {} } ) };
    return f;
}

Formula Formula::lnot( Formula f )
{
    return Formula{ std::make_shared< const Node >( Node{ StaticOp::Not, {}, {}, { std::move( f ) } } ) };
}

Formula Formula::land( Formula a, Formula b )
{
    return Formula{ std::make_shared< const Node >( Node{ StaticOp::And, {}, {}, { std::move( a ), std::move( b ) } } ) };
}

Formula Formula::lor( Formula a, Formula b )
{
    return Formula{ std::make_shared< const Node >( Node{ StaticOp::Or, {}, {}, { std::move( a ), std::move( b ) } } ) };
}

Formula Formula::implies( Formula a, Formula b )
{
    return Formula{ std::make_shared< const Node >( Node{ StaticOp::Implies, {}, {}, { std::move( a ), std::move( b ) } } ) };
}

Formula Formula::modal( StaticOp op, Group group, Formula arg )
{
    assert( is_modality( op ) && !is_binary_modality( op ) );
    return Formula{ std::make_shared< const Node >( Node{ op, {}, std::move( group ), { std::move( arg ) } } ) };
}

Formula Formula::modal( StaticOp op, Group group, Formula objective, Formula deadline )
{
    assert( is_binary_modality( op ) );
    return Formula{ std::make_shared< const Node >(
        Node{ op, {}, std::move( group ), { std::move( objective ), std::move( deadline ) } } ) };
}

StaticOp Formula::op() const { return _node->op; }
const std::string& Formula::name() const { return _node->name; }
const Group& Formula::group() const { return _node->group; }
std::size_t Formula::arity() const { return _node->args.size(); }

const Formula& Formula::arg( std::size_t i ) const
{
    assert( i < _node->args.size() );
    return _node->args[ i ];
}

bool operator==( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    return x.op == y.op && x.name == y.name && x.group == y.group && x.args == y.args;
}

Classification classify_monolithic( const Formula& f )
{
    switch ( f.op() )
    {
    case StaticOp::Not:
    case StaticOp::And:
    case StaticOp::Or:
    case StaticOp::Implies:
    case StaticOp::Top:
    case StaticOp::Bottom:
        return Classification::BooleanCombination;
    default:
        return Classification::Monolithic;
    }
}

bool is_propositional( const Formula& f )
{
    if ( is_modality( f.op() ) )
        return false;
    for ( std::size_t i = 0; i < f.arity(); ++i )
        if ( !is_propositional( f.arg( i ) ) )
            return false;
    return true;
}

namespace
{

void collect_props( const Formula& f, std::set< std::string >& out )
{
    if ( f.op() == StaticOp::Prop )
        out.insert( f.name() );
    for ( std::size_t i = 0; i < f.arity(); ++i )
        collect_props( f.arg( i ), out );
}

void collect_agents( const Formula& f, std::set< AgentId >& out )
{
    if ( is_modality( f.op() ) )
        out.insert( f.group().members().begin(), f.group().members().end() );
    for ( std::size_t i = 0; i < f.arity(); ++i )
        collect_agents( f.arg( i ), out );
}

} // namespace

std::set< std::string > free_props( const Formula& f )
{
    std::set< std::string > out;
    collect_props( f, out );
    return out;
}

std::set< AgentId > mentioned_agents( const Formula& f )
{
    std::set< AgentId > out;
    collect_agents( f, out );
    return out;
}

// ---------------------------------------------------------------------------

struct TemporalFormula::Node
{
    TemporalOp op;
    std::optional< Formula > leaf;
    std::vector< TemporalFormula > args;
};

TemporalFormula TemporalFormula::mono( Formula alpha )
{
    if ( classify_monolithic( alpha ) != Classification::Monolithic )
        throw MonolithicViolation{ "temporal leaf must be a monolithic formula, got a Boolean combination" };
    return TemporalFormula{ std::make_shared< const Node >( Node{ TemporalOp::Mono, std::move( alpha ), {} } ) };
}

TemporalFormula TemporalFormula::top()
{
    static const TemporalFormula f = mono( Formula::prop( std::string{ true_atom } ) );
    return f;
}

TemporalFormula TemporalFormula::lnot( TemporalFormula f )
{
    return TemporalFormula{ std::make_shared< const Node >( Node{ TemporalOp::Not, std::nullopt, { std::move( f ) } } ) };
}

TemporalFormula TemporalFormula::land( TemporalFormula a, TemporalFormula b )
{
    return TemporalFormula{
        std::make_shared< const Node >( Node{ TemporalOp::And, std::nullopt, { std::move( a ), std::move( b ) } } ) };
}

TemporalFormula TemporalFormula::until( TemporalFormula a, TemporalFormula b )
{
    return TemporalFormula{
        std::make_shared< const Node >( Node{ TemporalOp::Until, std::nullopt, { std::move( a ), std::move( b ) } } ) };
}

TemporalFormula TemporalFormula::since( TemporalFormula a, TemporalFormula b )
{
    return TemporalFormula{
        std::make_shared< const Node >( Node{ TemporalOp::Since, std::nullopt, { std::move( a ), std::move( b ) } } ) };
}

TemporalFormula TemporalFormula::bottom() { return lnot( top() ); }

TemporalFormula TemporalFormula::lor( TemporalFormula a, TemporalFormula b )
{
    return lnot( land( lnot( std::move( a ) ), lnot( std::move( b ) ) ) );
}

TemporalFormula TemporalFormula::implies( TemporalFormula a, TemporalFormula b )
{
    return lor( lnot( std::move( a ) ), std::move( b ) );
}

TemporalFormula TemporalFormula::eventually( TemporalFormula f ) { return until( top(), std::move( f ) ); }
TemporalFormula TemporalFormula::globally( TemporalFormula f ) { return lnot( eventually( lnot( std::move( f ) ) ) ); }
TemporalFormula TemporalFormula::past( TemporalFormula f ) { return since( top(), std::move( f ) ); }
TemporalFormula TemporalFormula::has_always( TemporalFormula f ) { return lnot( past( lnot( std::move( f ) ) ) ); }

TemporalFormula TemporalFormula::weak_until( TemporalFormula a, TemporalFormula b )
{
    auto g = globally( a );
    return lor( until( std::move( a ), std::move( b ) ), std::move( g ) );
}

TemporalOp TemporalFormula::op() const { return _node->op; }

const Formula& TemporalFormula::leaf() const
{
    assert( _node->leaf );
    return *_node->leaf;
}

const TemporalFormula& TemporalFormula::arg( std::size_t i ) const
{
    assert( i < _node->args.size() );
    return _node->args[ i ];
}

std::size_t TemporalFormula::arity() const { return _node->args.size(); }

bool TemporalFormula::is_true_leaf() const
{
    return op() == TemporalOp::Mono && leaf().op() == StaticOp::Prop && leaf().name() == true_atom;
}

bool operator==( const TemporalFormula& a, const TemporalFormula& b )
{
    if ( a._node == b._node )
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    return x.op == y.op && x.leaf == y.leaf && x.args == y.args;
}

namespace
{

void collect_leaves( const TemporalFormula& f, std::vector< Formula >& out )
{
    if ( f.op() == TemporalOp::Mono )
    {
        for ( const auto& l : out )
            if ( l == f.leaf() )
                return;
        out.push_back( f.leaf() );
        return;
    }
    for ( std::size_t i = 0; i < f.arity(); ++i )
        collect_leaves( f.arg( i ), out );
}

} // namespace

std::vector< Formula > leaves( const TemporalFormula& f )
{
    std::vector< Formula > out;
    collect_leaves( f, out );
    return out;
}

std::set< std::string > free_props( const TemporalFormula& f )
{
    std::set< std::string > out;
    for ( const auto& l : leaves( f ) )
        for ( auto& p : free_props( l ) )
            if ( p != true_atom )
                out.insert( p );
    return out;
}

} // namespace deemed
