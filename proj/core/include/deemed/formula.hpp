#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deemed/group.hpp"

namespace deemed
{

/// Internal atom that holds at every world of every model. Only ever
/// produced by the temporal layer to give ⊤ a monolithic encoding; user
/// input cannot name it.
inline constexpr std::string_view true_atom = "__true";

enum class StaticOp
{
    Prop,
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Dabl,     // deemed able
    Conf,     // confirmation
    Disc,     // disconfirmation
    Brings,   // E: brings it about
    Attempts, // Att
    Task,     // Task(objective; deadline)
    Agree,    // Agree(objective; deadline)
};

[[nodiscard]] bool is_modality( StaticOp op );
[[nodiscard]] bool is_binary_modality( StaticOp op );

/// Immutable static formula (shared structure, value semantics).
class Formula
{
public:
    static Formula prop( std::string name );
    static Formula top();
    static Formula bottom();
    static Formula lnot( Formula f );
    static Formula land( Formula a, Formula b );
    static Formula lor( Formula a, Formula b );
    static Formula implies( Formula a, Formula b );
    static Formula modal( StaticOp op, Group group, Formula arg );
    static Formula modal( StaticOp op, Group group, Formula objective, Formula deadline );

    static Formula dabl( Group g, Formula f ) { return modal( StaticOp::Dabl, std::move( g ), std::move( f ) ); }
    static Formula conf( Group g, Formula f ) { return modal( StaticOp::Conf, std::move( g ), std::move( f ) ); }
    static Formula disc( Group g, Formula f ) { return modal( StaticOp::Disc, std::move( g ), std::move( f ) ); }
    static Formula brings( Group g, Formula f ) { return modal( StaticOp::Brings, std::move( g ), std::move( f ) ); }
    static Formula attempts( Group g, Formula f ) { return modal( StaticOp::Attempts, std::move( g ), std::move( f ) ); }

    [[nodiscard]] StaticOp op() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Group& group() const;
    [[nodiscard]] std::size_t arity() const;
    [[nodiscard]] const Formula& arg( std::size_t i = 0 ) const;

    friend bool operator==( const Formula& a, const Formula& b );

private:
    struct Node;
    explicit Formula( std::shared_ptr< const Node > node ) : _node{ std::move( node ) } {}
    std::shared_ptr< const Node > _node;
};

enum class Classification
{
    Monolithic,
    BooleanCombination,
};

/// Boolean combination iff the root is ¬, ∧ or a connective defined from
/// them (∨, →, ⊤, ⊥); monolithic otherwise.
[[nodiscard]] Classification classify_monolithic( const Formula& f );

/// True iff no modality occurs anywhere in `f`.
[[nodiscard]] bool is_propositional( const Formula& f );

[[nodiscard]] std::set< std::string > free_props( const Formula& f );
[[nodiscard]] std::set< AgentId > mentioned_agents( const Formula& f );

enum class TemporalOp
{
    Mono,
    Not,
    And,
    Until,
    Since,
};

/// Temporal formula over monolithic static leaves. Derived operators are
/// stored in their expanded form.
class TemporalFormula
{
public:
    /// Throws MonolithicViolation if `alpha` is a Boolean combination.
    static TemporalFormula mono( Formula alpha );
    static TemporalFormula top();
    static TemporalFormula lnot( TemporalFormula f );
    static TemporalFormula land( TemporalFormula a, TemporalFormula b );
    static TemporalFormula until( TemporalFormula a, TemporalFormula b );
    static TemporalFormula since( TemporalFormula a, TemporalFormula b );

    static TemporalFormula bottom();
    static TemporalFormula lor( TemporalFormula a, TemporalFormula b );
    static TemporalFormula implies( TemporalFormula a, TemporalFormula b );
    static TemporalFormula eventually( TemporalFormula f );     // F f = T U f
    static TemporalFormula globally( TemporalFormula f );       // G f = !F !f
    static TemporalFormula weak_until( TemporalFormula a, TemporalFormula b ); // (a U b) | G a
    static TemporalFormula past( TemporalFormula f );           // P f = T S f
    static TemporalFormula has_always( TemporalFormula f );     // H f = !P !f

    [[nodiscard]] TemporalOp op() const;
    [[nodiscard]] const Formula& leaf() const;
    [[nodiscard]] const TemporalFormula& arg( std::size_t i = 0 ) const;
    [[nodiscard]] std::size_t arity() const;

    [[nodiscard]] bool is_true_leaf() const;

    friend bool operator==( const TemporalFormula& a, const TemporalFormula& b );

private:
    struct Node;
    explicit TemporalFormula( std::shared_ptr< const Node > node ) : _node{ std::move( node ) } {}
    std::shared_ptr< const Node > _node;
};

/// Monolithic leaves of a temporal formula, in first-occurrence order.
[[nodiscard]] std::vector< Formula > leaves( const TemporalFormula& f );
[[nodiscard]] std::set< std::string > free_props( const TemporalFormula& f );

} // namespace deemed
