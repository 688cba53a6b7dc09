#include "deemed/scenarios.hpp"

#include <algorithm>

#include "deemed/error.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

namespace
{

// A repository service s2 is deemed able to deliver phi by the manager, then
// agrees to deliver it before `deadline` and never does.
constexpr std::string_view repository_log =
    R"log({"universe":["deadline","phi"],"agents":["s1","s2","s3"],"horizon":6,"flags":{"empty_group_excluded":false,"monotonic_conf":false,"b6":false}}
{"t":0,"kind":"grant","group":["s2"],"objective":"phi"}
{"t":1,"kind":"agree","group":["s2"],"objective":"phi","deadline":"deadline"}
{"t":5,"props":["deadline"]}
)log";

// a and b jointly bring about p1 & p2 at 2; at 5 the pair tries again and
// fails.
constexpr std::string_view lifecycle_log =
    R"log({"universe":["p1","p2"],"agents":["a","b"],"horizon":8,"flags":{"empty_group_excluded":false,"monotonic_conf":false,"b6":false}}
{"t":2,"kind":"agency","group":["a"],"objective":"p1"}
{"t":2,"kind":"agency","group":["b"],"objective":"p2"}
{"t":5,"kind":"attempt","group":["a","b"],"objective":"!(!p1 | !p2)"}
{"t":2,"props":["p1","p2"]}
)log";

[[noreturn]] void golden_fail( std::string_view scenario, const std::string& what )
{
    throw GoldenMismatch{ std::string{ scenario } + ": " + what };
}

std::string range( std::size_t a, std::size_t b )
{
    return "[" + std::to_string( a ) + "," + std::to_string( b ) + ")";
}

std::string rules( const Fact& f )
{
    std::string out;
    for ( const auto& j : f.why )
    {
        out += out.empty() ? "" : "; ";
        out += j.rule;
        for ( std::size_t i = 0; i < j.events.size(); ++i )
            out += ( i ? ",#" : " #" ) + std::to_string( j.events[ i ] );
        if ( j.from && j.rule != "sc1" )
            out += " from t=" + std::to_string( *j.from );
    }
    return out;
}

// One block per instant: valuation, then every fact with its citations.
void list_instants( const DerivedTrace& dt, std::vector< std::string >& lines )
{
    for ( const auto& st : dt.instants )
    {
        std::string val;
        for ( const auto& p : st.valuation )
            val += ( val.empty() ? "" : "," ) + p;
        lines.push_back( "t=" + std::to_string( st.t ) + " {" + val + "}" );
        const std::pair< const char*, const FactTable* > tables[] = {
            { "E", &st.facts.brings },  { "Att", &st.facts.attempts }, { "Conf", &st.facts.conf },
            { "Disc", &st.facts.disc }, { "Dabl", &st.facts.dabl },
        };
        for ( const auto& [ name, table ] : tables )
            for ( const auto& [ id, f ] : *table )
                lines.push_back( "  " + std::string{ name } + f.group.str() + " " + print_static( f.objective ) +
                                 "  [" + rules( f ) + "]" );
        if ( st.t > 0 )
            for ( const auto& [ id, f ] : dt.instants[ st.t - 1 ].facts.dabl )
                if ( !st.facts.dabl.contains( id ) )
                    lines.push_back( "  !Dabl" + f.group.str() + " " + print_static( f.objective ) + "  [sc2]" );
        for ( auto idx : st.active_tasks )
        {
            const auto& task = dt.tasks[ idx ];
            lines.push_back( "  Task" + task.group.str() + "(" + print_static( task.objective ) + "; " +
                             print_static( task.deadline ) + ")  [agreed t=" + std::to_string( task.agreed_at ) +
                             "]" );
        }
    }
}

// Instants at which (g, key) is in the given table.
template < typename Pick >
std::vector< std::size_t > holds_at( const DerivedTrace& dt, const FactId& id, Pick pick )
{
    std::vector< std::size_t > out;
    for ( const auto& st : dt.instants )
        if ( pick( st.facts ).contains( id ) )
            out.push_back( st.t );
    return out;
}

std::vector< std::size_t > interval( std::size_t a, std::size_t b )
{
    std::vector< std::size_t > out;
    for ( auto t = a; t < b; ++t )
        out.push_back( t );
    return out;
}

Transcript repository( const EventLog& log )
{
    Transcript tr{ "repository", run( log ), {} };
    const auto& dt = tr.trace;
    const Group s2{ "s2" };
    const auto phi = Formula::prop( "phi" );
    const FactId id{ s2, canonical_key( phi, log.universe ) };
    if ( dt.instants.size() != 6 )
        golden_fail( tr.name, "expected 6 instants" );

    tr.lines.push_back( "scenario repository" );
    list_instants( dt, tr.lines );

    auto check = [ & ]( const std::string& what, bool ok ) {
        if ( !ok )
            golden_fail( tr.name, what );
        tr.lines.push_back( "check " + what + ": ok" );
    };
    const auto dabl = holds_at( dt, id, []( const FactSet& f ) -> const FactTable& { return f.dabl; } );
    const auto conf = holds_at( dt, id, []( const FactSet& f ) -> const FactTable& { return f.conf; } );
    const auto disc = holds_at( dt, id, []( const FactSet& f ) -> const FactTable& { return f.disc; } );
    std::vector< std::size_t > active;
    for ( const auto& st : dt.instants )
        for ( auto idx : st.active_tasks )
            if ( dt.tasks[ idx ].group == s2 && dt.tasks[ idx ].objective_key == id.key )
                active.push_back( st.t );

    check( "Conf{s2} phi exactly at {0}", conf == std::vector< std::size_t >{ 0 } );
    check( "Dabl{s2} phi exactly on " + range( 0, 5 ), dabl == interval( 0, 5 ) );
    check( "Task{s2}(phi; deadline) active exactly on " + range( 1, 5 ), active == interval( 1, 5 ) );
    check( "Disc{s2} phi exactly at {5} by t7",
           disc == std::vector< std::size_t >{ 5 } && dt.instants[ 5 ].facts.disc.at( id ).why.front().rule == "t7" );
    check( "!Dabl{s2} phi from 5 on", std::none_of( dabl.begin(), dabl.end(), []( auto t ) { return t >= 5; } ) );
    check( "task expired at 5", dt.tasks.size() == 1 && dt.tasks[ 0 ].status == TaskStatus::Expired &&
                                    dt.tasks[ 0 ].closed_at == std::optional< std::size_t >{ 5 } );
    auto report = validate_da_model( to_trace_model( dt ) );
    check( "C1-C3 hold", report.ok() );
    return tr;
}

Transcript lifecycle( const EventLog& log )
{
    Transcript tr{ "lifecycle", run( log ), {} };
    const auto& dt = tr.trace;
    const Group ab{ "a", "b" };

    const Event* attempt = nullptr;
    for ( const auto& e : log.events )
        if ( e.kind == EventKind::Attempt && e.group == ab )
            attempt = &e;
    if ( !attempt )
        golden_fail( tr.name, "no attempt by {a,b}" );
    const auto phi = attempt->objective;
    const auto shown = print_static( phi );
    const FactId id{ ab, canonical_key( phi, log.universe ) };
    const auto n = dt.instants.size();

    std::optional< std::size_t > c, d;
    for ( const auto& st : dt.instants )
    {
        if ( !c && st.facts.conf.contains( id ) )
            c = st.t;
        if ( c && !d && st.facts.disc.contains( id ) )
            d = st.t;
    }
    if ( !c || !d )
        golden_fail( tr.name, "expected a confirmation followed by a disconfirmation of {a,b} " + shown );

    tr.lines.push_back( "scenario lifecycle" );
    tr.lines.push_back( "phi := " + shown );
    list_instants( dt, tr.lines );

    auto dabl_at = [ & ]( std::size_t t ) { return dt.instants[ t ].facts.dabl.contains( id ); };
    auto expect = [ & ]( bool ok, const std::string& what ) {
        if ( !ok )
            golden_fail( tr.name, what );
    };

    for ( std::size_t t = 0; t < *c; ++t )
        expect( !dabl_at( t ), "Dabl{a,b} phi before the confirmation" );
    tr.lines.push_back( "1. t=0.." + std::to_string( *c - 1 ) + ": !Dabl{a,b} phi persists until a confirmation  [lbda2]" );

    const auto& conf = dt.instants[ *c ].facts.conf.at( id );
    const auto& ground = conf.why.front();
    expect( ground.rule == "b5" && ground.events.size() >= 2, "confirmation not by joint agency" );
    std::string parts;
    for ( auto e : ground.events )
    {
        const auto& ev = log.events[ e ];
        expect( ev.t == *c, "joint agency from different instants" );
        parts += ( parts.empty() ? "" : ", " ) + std::string{ "E" } + ev.group.str() + " " + print_static( ev.objective );
    }
    expect( !( conf.objective == phi ), "confirmed objective is syntactically phi" );
    tr.lines.push_back( "2. t=" + std::to_string( *c ) + ": " + parts + "; " + print_static( conf.objective ) +
                        " is equivalent to phi, so Conf{a,b} phi  [b5, scr2]" );

    expect( dabl_at( *c ) && dt.instants[ *c ].facts.dabl.at( id ).why.front().rule == "sc1",
            "Dabl{a,b} phi at the confirmation" );
    tr.lines.push_back( "3. t=" + std::to_string( *c ) + ": Dabl{a,b} phi  [sc1]" );

    for ( auto t = *c + 1; t < *d; ++t )
        expect( dabl_at( t ) && dt.instants[ t ].facts.dabl.at( id ).why.front().rule == "lbda1",
                "Dabl{a,b} phi persists at t=" + std::to_string( t ) );
    tr.lines.push_back( "4. t=" + std::to_string( *c + 1 ) + ".." + std::to_string( *d - 1 ) +
                        ": Dabl{a,b} phi persists until a disconfirmation  [lbda1]" );

    const auto& disc = dt.instants[ *d ].facts.disc.at( id );
    expect( disc.why.front().rule == "b7" && !dt.instants[ *d ].facts.brings.contains( id ),
            "disconfirmation not by a failed attempt" );
    tr.lines.push_back( "5. t=" + std::to_string( *d ) + ": Att{a,b} phi without E{a,b} phi, so Disc{a,b} phi  [b7]" );

    for ( auto t = *d; t < n; ++t )
        expect( !dabl_at( t ), "Dabl{a,b} phi after the disconfirmation" );
    tr.lines.push_back( "6. t=" + std::to_string( *d ) + ": !Dabl{a,b} phi  [sc2]; back to step 1" );

    auto report = validate_da_model( to_trace_model( dt ) );
    expect( report.ok(), "C1-C3 violated" );
    return tr;
}

} // namespace

const std::vector< std::string >& scenario_names()
{
    static const std::vector< std::string > names{ "lifecycle", "repository" };
    return names;
}

std::string_view scenario_jsonl( std::string_view name )
{
    if ( name == "repository" )
        return repository_log;
    if ( name == "lifecycle" )
        return lifecycle_log;
    throw Error{ "unknown scenario '" + std::string{ name } + "' (known: lifecycle, repository)" };
}

std::string Transcript::text() const
{
    std::string out;
    for ( const auto& l : lines )
        out += l + "\n";
    return out;
}

Transcript replay( std::string_view name, const EventLog& log )
{
    if ( name == "repository" )
        return repository( log );
    if ( name == "lifecycle" )
        return lifecycle( log );
    throw Error{ "unknown scenario '" + std::string{ name } + "' (known: lifecycle, repository)" };
}

Transcript replay( std::string_view name )
{
    return replay( name, parse_event_log( scenario_jsonl( name ) ) );
}

} // namespace deemed
