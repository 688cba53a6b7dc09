#include "deemed/engine.hpp"

#include <algorithm>
#include <sstream>

#include "deemed/error.hpp"
#include "deemed/syntax.hpp"

namespace deemed
{

const char* to_string( TaskStatus s )
{
    switch ( s )
    {
    case TaskStatus::Active: return "active";
    case TaskStatus::Completed: return "completed";
    case TaskStatus::Expired: return "expired";
    }
    return "?";
}

namespace
{

std::string event_ref( std::size_t id ) { return "#" + std::to_string( id ); }

std::string cite( const Justification& j )
{
    std::string out = j.rule;
    for ( std::size_t i = 0; i < j.events.size(); ++i )
        out += ( i ? "," : " " ) + event_ref( j.events[ i ] );
    if ( j.from )
        out += " from t=" + std::to_string( *j.from );
    return out;
}

std::vector< std::string > cite_all( const Fact& f )
{
    std::vector< std::string > out;
    for ( const auto& j : f.why )
        out.push_back( cite( j ) );
    return out;
}

std::vector< std::size_t > merge_events( std::vector< std::size_t > a, const std::vector< std::size_t >& b )
{
    a.insert( a.end(), b.begin(), b.end() );
    std::sort( a.begin(), a.end() );
    a.erase( std::unique( a.begin(), a.end() ), a.end() );
    return a;
}

// Adds `j` as a ground for (g, key); returns true if the fact is new.
bool record( FactTable& table, const Group& g, const CanonicalKey& key, const Formula& objective, Justification j )
{
    auto [ it, inserted ] = table.try_emplace( FactId{ g, key }, Fact{ g, key, objective, {} } );
    auto& why = it->second.why;
    if ( std::find( why.begin(), why.end(), j ) == why.end() )
        why.push_back( std::move( j ) );
    return inserted;
}

bool has( const FactTable& table, const Group& g, const CanonicalKey& key )
{
    return table.contains( FactId{ g, key } );
}

std::string at( std::size_t t, std::size_t id )
{
    return "t=" + std::to_string( t ) + ", event " + event_ref( id ) + ": ";
}

class Grounder
{
public:
    explicit Grounder( const EventLog& log ) : _log{ log }
    {
        _dt.log = log;
        _by_instant.resize( log.horizon );
        for ( std::size_t id = 0; id < log.events.size(); ++id )
        {
            const auto& e = log.events[ id ];
            if ( e.t >= log.horizon )
                throw InstantOutOfRange{ "event " + event_ref( id ) + " is beyond the horizon" };
            for ( const auto& a : e.group.members() )
                if ( !std::binary_search( log.agents.begin(), log.agents.end(), a ) )
                    throw UnknownAgent{ at( e.t, id ) + "agent '" + a + "' is not declared" };
            _by_instant[ e.t ].push_back( id );
        }
        _valuations.resize( log.horizon );
        for ( const auto& v : log.valuations )
        {
            if ( v.t >= log.horizon )
                throw InstantOutOfRange{ "valuation for t=" + std::to_string( v.t ) + " is beyond the horizon" };
            _valuations[ v.t ] = v.props;
        }
        if ( log.flags.monotonic_conf )
            _groups = all_groups( log.agents );
    }

    DerivedTrace run()
    {
        for ( std::size_t t = 0; t < _log.horizon; ++t )
            step( t );
        return std::move( _dt );
    }

private:
    CanonicalKey key_of( std::size_t t, std::size_t id, const Formula& f ) const
    {
        try
        {
            return canonical_key( f, _log.universe );
        }
        catch ( const NotPropositional& e )
        {
            throw NotPropositional{ at( t, id ) + e.what() };
        }
        catch ( const OutOfUniverse& e )
        {
            throw OutOfUniverse{ at( t, id ) + e.what() };
        }
    }

    bool confirm( FactSet& fs, const Group& g, const CanonicalKey& key, const Formula& obj, Justification j )
    {
        if ( g.empty() && _log.flags.empty_group_excluded )
            return false;
        return record( fs.conf, g, key, obj, std::move( j ) );
    }

    void step( std::size_t t )
    {
        InstantState st;
        st.t = t;
        st.valuation = _valuations[ t ];
        st.valuation_index = _log.universe.valuation_index( st.valuation );
        const std::size_t v = st.valuation_index;
        auto& fs = st.facts;

        std::vector< std::size_t > agency, attempts, grants, revokes, agrees;
        for ( auto id : _by_instant[ t ] )
        {
            switch ( _log.events[ id ].kind )
            {
            case EventKind::Agency: agency.push_back( id ); break;
            case EventKind::Attempt: attempts.push_back( id ); break;
            case EventKind::Grant: grants.push_back( id ); break;
            case EventKind::Revoke: revokes.push_back( id ); break;
            case EventKind::Agree: agrees.push_back( id ); break;
            }
        }

        // Agency: b1/b2 checks, then E closed under intersection (b3).
        std::vector< CanonicalKey > agency_keys;
        for ( auto id : agency )
        {
            const auto& e = _log.events[ id ];
            auto key = key_of( t, id, e.objective );
            if ( key.is_tautology() )
                throw AgencyContradiction{ t, { "b1 " + event_ref( id ) },
                                           at( t, id ) + "no group brings about a tautology: " + describe( e ) };
            if ( !key.bits().test( v ) )
                throw AgencyContradiction{ t, { "b2 " + event_ref( id ) },
                                           at( t, id ) + "agency objective is false at this instant: " +
                                               describe( e ) };
            record( fs.brings, e.group, key, e.objective, Justification{ "event", { id }, {}, {} } );
            agency_keys.push_back( std::move( key ) );
        }
        close_brings( fs.brings );

        // b4/b5: every non-empty subset of simultaneous agency events.
        if ( agency.size() > _log.flags.agency_subset_cap )
            throw CapExceeded{ "t=" + std::to_string( t ) + ": " + std::to_string( agency.size() ) +
                               " simultaneous agency events exceed the cap of " +
                               std::to_string( _log.flags.agency_subset_cap ) };
        const std::size_t subsets = std::size_t{ 1 } << agency.size();
        for ( std::size_t mask = 1; mask < subsets; ++mask )
        {
            Group g;
            std::optional< CanonicalKey > key;
            std::optional< Formula > obj;
            std::vector< std::size_t > ids;
            for ( std::size_t i = 0; i < agency.size(); ++i )
            {
                if ( !( mask & ( std::size_t{ 1 } << i ) ) )
                    continue;
                const auto& e = _log.events[ agency[ i ] ];
                g = g.unite( e.group );
                key = key ? *key & agency_keys[ i ] : agency_keys[ i ];
                obj = obj ? Formula::land( *obj, e.objective ) : e.objective;
                ids.push_back( agency[ i ] );
            }
            confirm( fs, g, *key, *obj, Justification{ ids.size() == 1 ? "b4" : "b5", ids, {}, {} } );
        }

        for ( auto id : grants )
        {
            const auto& e = _log.events[ id ];
            confirm( fs, e.group, key_of( t, id, e.objective ), e.objective, Justification{ "t1", { id }, {}, {} } );
        }
        for ( auto id : revokes )
        {
            const auto& e = _log.events[ id ];
            record( fs.disc, e.group, key_of( t, id, e.objective ), e.objective,
                    Justification{ "t2", { id }, {}, {} } );
        }

        if ( _log.flags.monotonic_conf )
        {
            const auto base = fs.conf;
            for ( const auto& [ fid, fact ] : base )
                for ( const auto& h : _groups )
                    if ( h != fact.group && fact.group.is_subset_of( h ) )
                        confirm( fs, h, fact.key, fact.objective,
                                 Justification{ "monotonic", fact.why.front().events, {}, "from " + fact.group.str() } );
        }

        // Attempts; a failed attempt disconfirms (b7).
        if ( _log.flags.b6 )
            for ( auto id : agency )
            {
                const auto& e = _log.events[ id ];
                record( fs.attempts, e.group, key_of( t, id, e.objective ), e.objective,
                        Justification{ "b6", { id }, {}, {} } );
            }
        for ( auto id : attempts )
        {
            const auto& e = _log.events[ id ];
            auto key = key_of( t, id, e.objective );
            record( fs.attempts, e.group, key, e.objective, Justification{ "event", { id }, {}, {} } );
            if ( !has( fs.brings, e.group, key ) )
                record( fs.disc, e.group, key, e.objective,
                        Justification{ "b7", { id }, {}, "no matching agency by " + e.group.str() } );
        }

        // Open tasks: completion or expiry.
        for ( auto idx : _open )
        {
            auto& task = _dt.tasks[ idx ];
            auto done = fs.brings.find( FactId{ task.group, task.objective_key } );
            if ( done != fs.brings.end() )
            {
                task.status = TaskStatus::Completed;
                task.closed_at = t;
                task.closing_event = done->second.why.front().events.front();
            }
            else if ( task.deadline_key.bits().test( v ) )
            {
                task.status = TaskStatus::Expired;
                task.closed_at = t;
                record( fs.disc, task.group, task.objective_key, task.objective,
                        Justification{ "t7", { task.event }, task.agreed_at,
                                       "deadline reached (" + print_static( task.deadline ) +
                                           ") with no completing agency" } );
            }
        }
        std::erase_if( _open, [ & ]( std::size_t idx ) { return _dt.tasks[ idx ].closed_at.has_value(); } );

        for ( auto id : agrees )
        {
            const auto& e = _log.events[ id ];
            TaskRecord task;
            task.group = e.group;
            task.objective = e.objective;
            task.objective_key = key_of( t, id, e.objective );
            task.deadline = *e.deadline;
            task.deadline_key = key_of( t, id, *e.deadline );
            task.agreed_at = t;
            task.event = id;
            if ( task.deadline_key.bits().test( v ) )
                throw TaskParadox{ t, { "t3 " + event_ref( id ) },
                                   at( t, id ) + "deadline already holds when the task is agreed: " + describe( e ) };
            if ( has( fs.brings, e.group, task.objective_key ) )
                throw TaskParadox{ t, { "t3 " + event_ref( id ) },
                                   at( t, id ) + "task is completed at the instant it is agreed: " + describe( e ) };
            st.agreements.push_back( _dt.tasks.size() );
            _open.push_back( _dt.tasks.size() );
            _dt.tasks.push_back( std::move( task ) );
        }
        st.active_tasks = _open;

        for ( const auto& [ fid, c ] : fs.conf )
        {
            auto d = fs.disc.find( fid );
            if ( d == fs.disc.end() )
                continue;
            auto prov = cite_all( c );
            auto more = cite_all( d->second );
            prov.insert( prov.end(), more.begin(), more.end() );
            std::string joined;
            for ( const auto& p : prov )
                joined += ( joined.empty() ? "" : "; " ) + p;
            throw InconsistencyError{ t, prov,
                                      "t=" + std::to_string( t ) + ": Conf and Disc of " + fid.group.str() + " " +
                                          print_static( c.objective ) + " at the same instant (" + joined + ")" };
        }

        // Persistence: dabl_t = (dabl_{t-1} \ disc_t) ∪ conf_t.
        if ( t > 0 )
            for ( const auto& [ fid, prev ] : _dt.instants.back().facts.dabl )
            {
                if ( fs.disc.contains( fid ) || fs.conf.contains( fid ) )
                    continue;
                const auto& origin = prev.why.front();
                fs.dabl.emplace( fid, Fact{ prev.group, prev.key, prev.objective,
                                            { Justification{ "lbda1", origin.events, origin.from, {} } } } );
            }
        for ( const auto& [ fid, c ] : fs.conf )
        {
            std::vector< std::size_t > ids;
            for ( const auto& j : c.why )
                ids = merge_events( std::move( ids ), j.events );
            fs.dabl.emplace( fid, Fact{ c.group, c.key, c.objective, { Justification{ "sc1", ids, t, {} } } } );
        }

        _dt.instants.push_back( std::move( st ) );
    }

    static void close_brings( FactTable& brings )
    {
        bool grew = true;
        while ( grew )
        {
            grew = false;
            std::vector< Fact > facts;
            for ( const auto& [ id, f ] : brings )
                facts.push_back( f );
            for ( std::size_t i = 0; i < facts.size(); ++i )
                for ( std::size_t j = i + 1; j < facts.size(); ++j )
                {
                    if ( facts[ i ].group != facts[ j ].group )
                        continue;
                    auto key = facts[ i ].key & facts[ j ].key;
                    if ( has( brings, facts[ i ].group, key ) )
                        continue;
                    std::vector< std::size_t > ids;
                    for ( const auto& w : facts[ i ].why )
                        ids = merge_events( std::move( ids ), w.events );
                    for ( const auto& w : facts[ j ].why )
                        ids = merge_events( std::move( ids ), w.events );
                    record( brings, facts[ i ].group, key,
                            Formula::land( facts[ i ].objective, facts[ j ].objective ),
                            Justification{ "b3", ids, {}, {} } );
                    grew = true;
                }
        }
    }

    const EventLog& _log;
    DerivedTrace _dt;
    std::vector< std::vector< std::size_t > > _by_instant;
    std::vector< std::set< std::string > > _valuations;
    std::vector< Group > _groups;
    std::vector< std::size_t > _open;
};

std::string describe_justification( const DerivedTrace& dt, const Justification& j )
{
    std::string out = j.rule + ":";
    for ( auto id : j.events )
    {
        const auto& e = dt.log.events[ id ];
        out += " " + describe( e ) + " (" + event_ref( id ) + " at t=" + std::to_string( e.t ) + ")";
    }
    if ( !j.note.empty() )
        out += "; " + j.note;
    return out;
}

} // namespace

DerivedTrace run( const EventLog& log )
{
    return Grounder{ log }.run();
}

TraceModel to_trace_model( const DerivedTrace& dt )
{
    const auto& u = dt.log.universe;
    const std::size_t n = u.valuation_count();
    std::vector< std::string > worlds;
    worlds.reserve( n );
    for ( std::size_t i = 0; i < n; ++i )
        worlds.push_back( "w" + std::to_string( i ) );

    std::vector< PointedModel > out;
    out.reserve( dt.instants.size() );
    for ( const auto& st : dt.instants )
    {
        auto m = std::make_shared< SCModel >( worlds, dt.log.agents );
        for ( std::size_t p = 0; p < u.size(); ++p )
            m->set_prop_extension( u.props()[ p ], u.prop_table( p ) );
        const std::size_t w = st.valuation_index;
        const std::pair< Neighborhood, const FactTable* > tables[] = {
            { Neighborhood::Dabl, &st.facts.dabl },         { Neighborhood::Conf, &st.facts.conf },
            { Neighborhood::Disc, &st.facts.disc },         { Neighborhood::Brings, &st.facts.brings },
            { Neighborhood::Attempts, &st.facts.attempts },
        };
        for ( const auto& [ n_kind, table ] : tables )
            for ( const auto& [ id, fact ] : *table )
                m->add( n_kind, w, fact.group, fact.key.bits() );
        for ( auto idx : st.active_tasks )
        {
            const auto& task = dt.tasks[ idx ];
            m->add_pair( PairTable::Task, w, task.group, task.objective_key.bits(), task.deadline_key.bits() );
        }
        for ( auto idx : st.agreements )
        {
            const auto& task = dt.tasks[ idx ];
            m->add_pair( PairTable::Agree, w, task.group, task.objective_key.bits(), task.deadline_key.bits() );
        }
        out.push_back( PointedModel{ std::move( m ), w } );
    }
    return TraceModel{ std::move( out ) };
}

std::vector< bool > query_all( const DerivedTrace& dt, const TemporalFormula& f )
{
    return eval_trace( to_trace_model( dt ), f );
}

bool query( const DerivedTrace& dt, const TemporalFormula& f, std::size_t t )
{
    if ( t >= dt.instants.size() )
        throw InstantOutOfRange{ "instant " + std::to_string( t ) + " is outside 0.." +
                                 std::to_string( dt.instants.size() - 1 ) };
    return query_all( dt, f )[ t ];
}

Explanation explain( const DerivedTrace& dt, const Formula& fact, std::size_t t )
{
    if ( t >= dt.instants.size() )
        throw InstantOutOfRange{ "instant " + std::to_string( t ) + " is outside 0.." +
                                 std::to_string( dt.instants.size() - 1 ) };
    const auto op = fact.op();
    if ( op != StaticOp::Dabl && op != StaticOp::Conf && op != StaticOp::Disc )
        throw UnknownFact{ "only Dabl, Conf and Disc facts can be explained: " + print_static( fact ) };

    Explanation ex;
    ex.op = op;
    ex.group = fact.group();
    ex.objective = fact.arg( 0 );
    ex.t = t;
    const auto key = canonical_key( ex.objective, dt.log.universe );
    const auto& fs = dt.instants[ t ].facts;
    const FactTable& table = op == StaticOp::Dabl ? fs.dabl : op == StaticOp::Conf ? fs.conf : fs.disc;
    auto it = table.find( FactId{ ex.group, key } );
    if ( it == table.end() )
        throw UnknownFact{ print_static( fact ) + " does not hold at t=" + std::to_string( t ) };

    ex.lines.push_back( print_static( fact ) + " holds at t=" + std::to_string( t ) );
    if ( op != StaticOp::Dabl )
    {
        ex.grounds = it->second.why;
        for ( const auto& j : ex.grounds )
        {
            auto line = "  " + describe_justification( dt, j );
            if ( j.rule == "t7" )
                line += " at t=" + std::to_string( t );
            ex.lines.push_back( line );
        }
        return ex;
    }

    const auto& origin = it->second.why.front();
    ex.confirmed_at = origin.from;
    const auto c = *origin.from;
    ex.grounds = dt.instants[ c ].facts.conf.at( FactId{ ex.group, key } ).why;
    ex.lines.push_back( "  confirmed at t=" + std::to_string( c ) );
    for ( const auto& j : ex.grounds )
        ex.lines.push_back( "    " + describe_justification( dt, j ) );
    ex.lines.push_back( "  sc1: Conf implies Dabl at t=" + std::to_string( c ) );
    if ( c < t )
        ex.lines.push_back( "  lbda1: persists over t=" + std::to_string( c + 1 ) + ".." + std::to_string( t ) +
                            " with no disconfirmation" );
    ex.lines.push_back( c == t ? "  lbda3: grounded by Conf at t=" + std::to_string( t )
                               : "  lbda3: grounded by Dabl S Conf since t=" + std::to_string( c ) );
    return ex;
}

std::string describe( const DerivedTrace& dt )
{
    std::ostringstream out;
    for ( const auto& st : dt.instants )
    {
        out << "t=" << st.t << " {";
        bool first = true;
        for ( const auto& p : st.valuation )
        {
            out << ( first ? "" : "," ) << p;
            first = false;
        }
        out << "}\n";
        const std::pair< const char*, const FactTable* > tables[] = {
            { "E", &st.facts.brings },   { "Att", &st.facts.attempts }, { "Conf", &st.facts.conf },
            { "Disc", &st.facts.disc },  { "Dabl", &st.facts.dabl },
        };
        for ( const auto& [ name, table ] : tables )
            for ( const auto& [ id, fact ] : *table )
            {
                out << "  " << name << fact.group.str() << " " << print_static( fact.objective ) << "  [";
                for ( std::size_t i = 0; i < fact.why.size(); ++i )
                    out << ( i ? "; " : "" ) << cite( fact.why[ i ] );
                out << "]\n";
            }
        for ( auto idx : st.active_tasks )
        {
            const auto& task = dt.tasks[ idx ];
            out << "  Task" << task.group.str() << "(" << print_static( task.objective ) << "; "
                << print_static( task.deadline ) << ")  [agreed t=" << task.agreed_at << "]\n";
        }
    }
    for ( std::size_t i = 0; i < dt.tasks.size(); ++i )
    {
        const auto& task = dt.tasks[ i ];
        out << "task " << i << " " << task.group.str() << " " << print_static( task.objective ) << ": "
            << to_string( task.status );
        if ( task.closed_at )
            out << " at t=" << *task.closed_at;
        out << "\n";
    }
    return out.str();
}

} // namespace deemed
