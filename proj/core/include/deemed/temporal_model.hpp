#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deemed/formula.hpp"
#include "deemed/static_model.hpp"

namespace deemed
{

/// Finite linear flow of time 0..n-1 with a pointed model at every instant.
class TraceModel
{
public:
    /// Throws InvalidModel if some instant's model violates the static
    /// constraints, unless `allow_invalid`.
    explicit TraceModel( std::vector< PointedModel > instants, bool allow_invalid = false );

    [[nodiscard]] std::size_t length() const { return _instants.size(); }
    [[nodiscard]] const PointedModel& at( std::size_t t ) const { return _instants.at( t ); }
    [[nodiscard]] const std::vector< PointedModel >& instants() const { return _instants; }

    /// Union of the agents declared by the instants' models, sorted.
    [[nodiscard]] std::vector< AgentId > agents() const;

    /// True iff every instant uses the same world list and valuation.
    [[nodiscard]] bool shared_frame() const;

private:
    std::vector< PointedModel > _instants;
};

/// Truth value of `f` at every instant.
[[nodiscard]] std::vector< bool > eval_trace( const TraceModel& tm, const TemporalFormula& f );
[[nodiscard]] bool eval_temporal( const TraceModel& tm, std::size_t t, const TemporalFormula& f );

enum class DAConstraint
{
    C1, // ability persists until disconfirmed
    C2, // inability persists until confirmed
    C3, // ability is grounded in a present or past confirmation
};

[[nodiscard]] const char* to_string( DAConstraint c );

struct DAViolation
{
    DAConstraint constraint;
    std::size_t instant;
    Group group;
    WorldSet objective;
    std::string witness;
};

struct DAValidationReport
{
    std::vector< DAViolation > violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Caps group enumeration for validation.
inline constexpr std::size_t max_validated_agents = 6;

/// World-sets found in any Dabl/Conf/Disc neighborhood at any instant's
/// point, ascending. Requires a common world list (FrameMismatch otherwise).
[[nodiscard]] std::vector< WorldSet > tracked_objectives( const TraceModel& tm );

/// Checks C1-C3 for every instant, every group over the declared agents
/// and every tracked objective. Violations are ordered by instant.
[[nodiscard]] DAValidationReport validate_da_model( const TraceModel& tm );

/// A propositional formula whose extension is `x` at every instant, if the
/// frame admits one.
[[nodiscard]] std::optional< Formula > objective_formula( const TraceModel& tm, const WorldSet& x );

/// Printed objective for reports: a formula when one exists, else the
/// world-set.
[[nodiscard]] std::string describe_objective( const TraceModel& tm, const WorldSet& x );
[[nodiscard]] std::string describe( const TraceModel& tm, const DAViolation& v );

enum class DAAxiom
{
    lbda1, // Dabl -> Dabl W Disc
    lbda2, // !Dabl -> !Dabl W Conf
    lbda3, // Dabl -> Conf | (Dabl S Conf)
};

[[nodiscard]] const char* to_string( DAAxiom a );
[[nodiscard]] TemporalFormula axiom_instance( DAAxiom a, const Group& g, const Formula& objective );
[[nodiscard]] std::vector< bool > axiom_check( const TraceModel& tm, DAAxiom a, const Group& g,
                                               const Formula& objective );

} // namespace deemed
