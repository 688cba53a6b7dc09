#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deemed
{

using AgentId = std::string;

/// Reserved agent name for the system manager.
inline constexpr std::string_view manager_agent = "mgr";

[[nodiscard]] bool is_valid_agent_name( std::string_view name );

/// A finite set of agents, kept sorted and duplicate-free. The empty group is
/// a legal value.
class Group
{
public:
    Group() = default;
    Group( std::initializer_list< AgentId > members );
    explicit Group( std::vector< AgentId > members );

    [[nodiscard]] const std::vector< AgentId >& members() const { return _members; }
    [[nodiscard]] bool empty() const { return _members.empty(); }
    [[nodiscard]] std::size_t size() const { return _members.size(); }
    [[nodiscard]] bool contains( std::string_view agent ) const;
    [[nodiscard]] bool is_subset_of( const Group& other ) const;
    [[nodiscard]] Group unite( const Group& other ) const;

    /// `{a,b}` form used by the formula printer.
    [[nodiscard]] std::string str() const;

    friend bool operator==( const Group&, const Group& ) = default;
    friend auto operator<=>( const Group&, const Group& ) = default;

private:
    std::vector< AgentId > _members;
};

/// Every subset of `agents`, ordered by bitmask over the given order.
[[nodiscard]] std::vector< Group > all_groups( std::span< const AgentId > agents );

} // namespace deemed
