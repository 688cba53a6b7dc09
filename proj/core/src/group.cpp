#include "deemed/group.hpp"

#include <algorithm>
#include <cctype>

#include "deemed/error.hpp"

namespace deemed
{

bool is_valid_agent_name( std::string_view name )
{
    return !name.empty() && std::all_of( name.begin(), name.end(), []( unsigned char c ) {
        return std::isalnum( c ) || c == '_';
    } );
}

Group::Group( std::initializer_list< AgentId > members )
    : Group{ std::vector< AgentId >( members ) }
{
}

Group::Group( std::vector< AgentId > members )
    : _members{ std::move( members ) }
{
    for ( const auto& m : _members )
        if ( !is_valid_agent_name( m ) )
            throw FormatError{ "invalid agent name '" + m + "'" };
    std::sort( _members.begin(), _members.end() );
    _members.erase( std::unique( _members.begin(), _members.end() ), _members.end() );
}

bool Group::contains( std::string_view agent ) const
{
    return std::binary_search( _members.begin(), _members.end(), agent );
}

bool Group::is_subset_of( const Group& other ) const
{
    return std::includes( other._members.begin(), other._members.end(), _members.begin(), _members.end() );
}

Group Group::unite( const Group& other ) const
{
    Group out;
    std::set_union( _members.begin(), _members.end(), other._members.begin(), other._members.end(),
                    std::back_inserter( out._members ) );
    return out;
}

std::string Group::str() const
{
    std::string out = "{";
    for ( std::size_t i = 0; i < _members.size(); ++i )
    {
        if ( i != 0 )
            out += ',';
        out += _members[ i ];
    }
    return out + "}";
}

std::vector< Group > all_groups( std::span< const AgentId > agents )
{
    if ( agents.size() > 20 )
        throw CapExceeded{ "too many agents to enumerate groups" };
    std::vector< Group > out;
    const std::size_t n = std::size_t{ 1 } << agents.size();
    out.reserve( n );
    for ( std::size_t mask = 0; mask < n; ++mask )
    {
        std::vector< AgentId > members;
        for ( std::size_t i = 0; i < agents.size(); ++i )
            if ( mask & ( std::size_t{ 1 } << i ) )
                members.push_back( agents[ i ] );
        out.emplace_back( std::move( members ) );
    }
    return out;
}

} // namespace deemed
