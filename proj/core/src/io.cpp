#include "deemed/io.hpp"

#include <fstream>
#include <sstream>

#include "deemed/error.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

std::string read_file( const std::filesystem::path& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw FormatError{ "cannot read '" + path.string() + "'" };
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json_file( const std::filesystem::path& path )
{
    try
    {
        return json::parse( read_file( path ) );
    }
    catch ( const json::parse_error& e )
    {
        throw FormatError{ path.string() + ": " + e.what() };
    }
}

namespace
{

struct Table
{
    const char* key;
    Neighborhood n;
};

constexpr Table unary_tables[] = {
    { "dabl", Neighborhood::Dabl },   { "conf", Neighborhood::Conf },    { "disc", Neighborhood::Disc },
    { "E", Neighborhood::Brings },    { "Att", Neighborhood::Attempts },
};

struct Pairs
{
    const char* key;
    PairTable n;
};

constexpr Pairs pair_tables[] = { { "Task", PairTable::Task }, { "Agree", PairTable::Agree } };

template < typename T >
T get( const json& j, const char* name, const std::string& where )
{
    if ( !j.is_object() || !j.contains( name ) )
        throw FormatError{ where + ": missing field '" + name + "'" };
    try
    {
        return j.at( name ).get< T >();
    }
    catch ( const json::exception& )
    {
        throw FormatError{ where + ": field '" + name + "' has the wrong type" };
    }
}

std::size_t world( const SCModel& m, const std::string& id, const std::string& where )
{
    auto w = m.world_index( id );
    if ( !w )
        throw FormatError{ where + ": unknown world '" + id + "'" };
    return *w;
}

WorldSet world_set( const SCModel& m, const json& j, const std::string& where )
{
    if ( !j.is_array() )
        throw FormatError{ where + ": a world set must be an array of world ids" };
    auto x = m.empty_set();
    for ( const auto& id : j )
    {
        if ( !id.is_string() )
            throw FormatError{ where + ": world ids must be strings" };
        x.set( world( m, id.get< std::string >(), where ) );
    }
    return x;
}

json world_set_json( const SCModel& m, const WorldSet& x )
{
    json out = json::array();
    for ( auto w : x.members() )
        out.push_back( m.worlds()[ w ] );
    return out;
}

Group group( const json& j, const std::string& where )
{
    try
    {
        return Group{ j.get< std::vector< std::string > >() };
    }
    catch ( const json::exception& )
    {
        throw FormatError{ where + ": 'G' must be an array of agent names" };
    }
}

json justification_json( const Justification& j )
{
    json out{ { "rule", j.rule }, { "events", j.events } };
    if ( j.from )
        out[ "from" ] = *j.from;
    if ( !j.note.empty() )
        out[ "note" ] = j.note;
    return out;
}

json fact_table_json( const FactTable& table )
{
    json out = json::array();
    for ( const auto& [ id, f ] : table )
    {
        json why = json::array();
        for ( const auto& j : f.why )
            why.push_back( justification_json( j ) );
        out.push_back( json{ { "group", f.group.members() },
                             { "objective", print_static( f.objective ) },
                             { "key", f.key.str() },
                             { "why", why } } );
    }
    return out;
}

} // namespace

SCModel model_from_json( const json& j, bool allow_invalid )
{
    if ( !j.is_object() )
        throw FormatError{ "model: expected a JSON object" };
    SCModel m{ get< std::vector< std::string > >( j, "worlds", "model" ),
               j.contains( "agents" ) ? get< std::vector< std::string > >( j, "agents", "model" )
                                      : std::vector< std::string >{} };
    if ( j.contains( "valuation" ) )
    {
        const auto& val = j.at( "valuation" );
        if ( !val.is_object() )
            throw FormatError{ "model: 'valuation' must map world ids to proposition lists" };
        for ( const auto& [ id, props ] : val.items() )
        {
            const auto w = world( m, id, "valuation" );
            if ( !props.is_array() )
                throw FormatError{ "valuation: '" + id + "' must list propositions" };
            for ( const auto& p : props )
            {
                if ( !p.is_string() )
                    throw FormatError{ "valuation: proposition names must be strings" };
                m.set_prop( w, p.get< std::string >() );
            }
        }
    }
    for ( const auto& t : unary_tables )
    {
        if ( !j.contains( t.key ) )
            continue;
        const std::string where = t.key;
        for ( const auto& entry : j.at( t.key ) )
        {
            const auto w = world( m, get< std::string >( entry, "w", where ), where );
            const auto g = group( entry.contains( "G" ) ? entry.at( "G" ) : json::array(), where );
            if ( !entry.contains( "sets" ) || !entry.at( "sets" ).is_array() )
                throw FormatError{ where + ": missing array 'sets'" };
            for ( const auto& s : entry.at( "sets" ) )
                m.add( t.n, w, g, world_set( m, s, where ) );
        }
    }
    for ( const auto& t : pair_tables )
    {
        if ( !j.contains( t.key ) )
            continue;
        const std::string where = t.key;
        for ( const auto& entry : j.at( t.key ) )
        {
            const auto w = world( m, get< std::string >( entry, "w", where ), where );
            const auto g = group( entry.contains( "G" ) ? entry.at( "G" ) : json::array(), where );
            if ( !entry.contains( "pairs" ) || !entry.at( "pairs" ).is_array() )
                throw FormatError{ where + ": missing array 'pairs'" };
            for ( const auto& p : entry.at( "pairs" ) )
            {
                if ( !p.is_array() || p.size() != 2 )
                    throw FormatError{ where + ": each pair must be [objective, deadline]" };
                m.add_pair( t.n, w, g, world_set( m, p[ 0 ], where ), world_set( m, p[ 1 ], where ) );
            }
        }
    }
    if ( !allow_invalid )
    {
        auto report = validate_sc_model( m );
        if ( !report.ok() )
            throw InvalidModel{ describe( m, report.violations.front() ) };
    }
    return m;
}

json model_to_json( const SCModel& m )
{
    json out{ { "worlds", m.worlds() }, { "agents", m.agents() } };
    json val = json::object();
    for ( std::size_t w = 0; w < m.world_count(); ++w )
        val[ m.worlds()[ w ] ] = m.valuation( w );
    out[ "valuation" ] = val;
    for ( const auto& t : unary_tables )
    {
        json entries = json::array();
        for ( const auto& [ key, sets ] : m.table( t.n ) )
        {
            if ( sets.empty() )
                continue;
            json js = json::array();
            for ( const auto& x : sets )
                js.push_back( world_set_json( m, x ) );
            entries.push_back( json{ { "w", m.worlds()[ key.first ] }, { "G", key.second.members() }, { "sets", js } } );
        }
        if ( !entries.empty() )
            out[ t.key ] = entries;
    }
    for ( const auto& t : pair_tables )
    {
        json entries = json::array();
        for ( const auto& [ key, pairs ] : m.table( t.n ) )
        {
            if ( pairs.empty() )
                continue;
            json jp = json::array();
            for ( const auto& [ x, y ] : pairs )
                jp.push_back( json::array( { world_set_json( m, x ), world_set_json( m, y ) } ) );
            entries.push_back( json{ { "w", m.worlds()[ key.first ] }, { "G", key.second.members() }, { "pairs", jp } } );
        }
        if ( !entries.empty() )
            out[ t.key ] = entries;
    }
    return out;
}

SCModel load_model( const std::filesystem::path& path, bool allow_invalid )
{
    return model_from_json( read_json_file( path ), allow_invalid );
}

PointedModel pointed_from_json( const json& j, bool allow_invalid )
{
    auto m = std::make_shared< SCModel >( model_from_json( j, allow_invalid ) );
    const auto point = world( *m, get< std::string >( j, "point", "model" ), "point" );
    return PointedModel{ std::move( m ), point };
}

TraceModel trace_from_json( const json& j, const std::filesystem::path& base, bool allow_invalid )
{
    const auto n = get< std::size_t >( j, "instants", "trace" );
    if ( !j.contains( "models" ) || !j.at( "models" ).is_array() )
        throw FormatError{ "trace: missing array 'models'" };
    const auto& models = j.at( "models" );
    if ( models.size() != n )
        throw FormatError{ "trace: 'instants' is " + std::to_string( n ) + " but " +
                           std::to_string( models.size() ) + " models are given" };
    if ( n == 0 )
        throw FormatError{ "trace: at least one instant is required" };
    std::map< std::string, std::shared_ptr< const SCModel > > cache;
    std::vector< PointedModel > out;
    for ( const auto& entry : models )
    {
        if ( entry.is_object() && entry.contains( "ref" ) )
        {
            const auto ref = get< std::string >( entry, "ref", "trace" );
            auto& shared = cache[ ref ];
            if ( !shared )
                shared = std::make_shared< SCModel >( model_from_json( read_json_file( base / ref ), true ) );
            const auto point = world( *shared, get< std::string >( entry, "point", "trace" ), "point" );
            out.push_back( PointedModel{ shared, point } );
        }
        else
            out.push_back( pointed_from_json( entry, true ) );
    }
    return TraceModel{ std::move( out ), allow_invalid };
}

json trace_to_json( const TraceModel& tm )
{
    json models = json::array();
    for ( const auto& pm : tm.instants() )
    {
        auto j = model_to_json( *pm.model );
        j[ "point" ] = pm.model->worlds()[ pm.point ];
        models.push_back( std::move( j ) );
    }
    return json{ { "instants", tm.length() }, { "models", models } };
}

TraceModel load_trace( const std::filesystem::path& path, bool allow_invalid )
{
    return trace_from_json( read_json_file( path ), path.parent_path(), allow_invalid );
}

json to_json( const SCModel& m, const ValidationReport& r )
{
    json vs = json::array();
    for ( const auto& v : r.violations )
    {
        json jv{ { "constraint", to_string( v.constraint ) },
                 { "world", m.worlds()[ v.world ] },
                 { "group", v.group.members() },
                 { "set", world_set_json( m, v.set ) },
                 { "message", describe( m, v ) } };
        if ( v.other )
            jv[ "other" ] = world_set_json( m, *v.other );
        vs.push_back( std::move( jv ) );
    }
    return json{ { "ok", r.ok() }, { "violations", vs } };
}

json to_json( const TraceModel& tm, const DAValidationReport& r )
{
    json vs = json::array();
    for ( const auto& v : r.violations )
    {
        const auto& m = *tm.at( v.instant ).model;
        vs.push_back( json{ { "constraint", to_string( v.constraint ) },
                            { "instant", v.instant },
                            { "group", v.group.members() },
                            { "objective", describe_objective( tm, v.objective ) },
                            { "objective_worlds", world_set_json( m, v.objective ) },
                            { "witness", v.witness },
                            { "message", describe( tm, v ) } } );
    }
    return json{ { "ok", r.ok() }, { "violations", vs } };
}

json to_json( const DerivedTrace& dt )
{
    json instants = json::array();
    for ( const auto& st : dt.instants )
        instants.push_back( json{ { "t", st.t },
                                  { "valuation", st.valuation },
                                  { "brings", fact_table_json( st.facts.brings ) },
                                  { "attempts", fact_table_json( st.facts.attempts ) },
                                  { "conf", fact_table_json( st.facts.conf ) },
                                  { "disc", fact_table_json( st.facts.disc ) },
                                  { "dabl", fact_table_json( st.facts.dabl ) },
                                  { "active_tasks", st.active_tasks },
                                  { "agreements", st.agreements } } );
    json tasks = json::array();
    for ( const auto& task : dt.tasks )
    {
        json jt{ { "group", task.group.members() },
                 { "objective", print_static( task.objective ) },
                 { "deadline", print_static( task.deadline ) },
                 { "agreed_at", task.agreed_at },
                 { "event", task.event },
                 { "status", to_string( task.status ) } };
        if ( task.closed_at )
            jt[ "closed_at" ] = *task.closed_at;
        tasks.push_back( std::move( jt ) );
    }
    return json{ { "universe", dt.log.universe.props() },
                 { "agents", dt.log.agents },
                 { "horizon", dt.log.horizon },
                 { "instants", instants },
                 { "tasks", tasks } };
}

json to_json( const Explanation& ex )
{
    json grounds = json::array();
    for ( const auto& j : ex.grounds )
        grounds.push_back( justification_json( j ) );
    json out{ { "fact", print_static( Formula::modal( ex.op, ex.group, ex.objective ) ) },
              { "t", ex.t },
              { "grounds", grounds },
              { "lines", ex.lines } };
    if ( ex.confirmed_at )
        out[ "confirmed_at" ] = *ex.confirmed_at;
    return out;
}

} // namespace deemed
