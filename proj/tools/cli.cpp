#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deemed/engine.hpp"
#include "deemed/error.hpp"
#include "deemed/harness.hpp"
#include "deemed/io.hpp"
#include "deemed/scenarios.hpp"
#include "deemed/syntax.hpp"

namespace deemed::cli
{

namespace
{

using nlohmann::json;

struct Options
{
    bool json = false;
    bool temporal = false;
    bool allow_invalid = false;
    std::string formula;
    std::string model;
    std::string world;
    std::string trace;
    std::string log;
    std::string export_trace;
    std::string fact;
    std::string scenario;
    std::string suite = "all";
    std::size_t instant = 0;
    std::size_t cases = 500;
    std::uint64_t seed = default_suite_seed;
};

const char* error_type( const std::exception& e )
{
    if ( dynamic_cast< const ParseError* >( &e ) ) return "ParseError";
    if ( dynamic_cast< const MonolithicViolation* >( &e ) ) return "MonolithicViolation";
    if ( dynamic_cast< const NotPropositional* >( &e ) ) return "NotPropositional";
    if ( dynamic_cast< const OutOfUniverse* >( &e ) ) return "OutOfUniverse";
    if ( dynamic_cast< const UnknownAgent* >( &e ) ) return "UnknownAgent";
    if ( dynamic_cast< const InstantOutOfRange* >( &e ) ) return "InstantOutOfRange";
    if ( dynamic_cast< const FrameMismatch* >( &e ) ) return "FrameMismatch";
    if ( dynamic_cast< const CapExceeded* >( &e ) ) return "CapExceeded";
    if ( dynamic_cast< const FormatError* >( &e ) ) return "FormatError";
    if ( dynamic_cast< const InvalidModel* >( &e ) ) return "InvalidModel";
    if ( dynamic_cast< const InconsistencyError* >( &e ) ) return "InconsistencyError";
    if ( dynamic_cast< const TaskParadox* >( &e ) ) return "TaskParadox";
    if ( dynamic_cast< const AgencyContradiction* >( &e ) ) return "AgencyContradiction";
    if ( dynamic_cast< const UnknownFact* >( &e ) ) return "UnknownFact";
    if ( dynamic_cast< const GoldenMismatch* >( &e ) ) return "GoldenMismatch";
    return "Error";
}

// Malformed input and misuse exit 2; everything else is a failed check.
bool is_usage_error( const std::exception& e )
{
    return dynamic_cast< const ParseError* >( &e ) || dynamic_cast< const MonolithicViolation* >( &e ) ||
           dynamic_cast< const FormatError* >( &e ) || dynamic_cast< const InstantOutOfRange* >( &e ) ||
           dynamic_cast< const NotPropositional* >( &e ) || dynamic_cast< const OutOfUniverse* >( &e ) ||
           dynamic_cast< const UnknownAgent* >( &e ) || dynamic_cast< const FrameMismatch* >( &e ) ||
           dynamic_cast< const CapExceeded* >( &e );
}

json error_json( const std::exception& e )
{
    json j{ { "type", error_type( e ) }, { "message", e.what() } };
    if ( const auto* p = dynamic_cast< const ParseError* >( &e ) )
    {
        j[ "offset" ] = p->offset();
        j[ "expected" ] = p->expected();
    }
    if ( const auto* g = dynamic_cast< const EngineError* >( &e ) )
    {
        j[ "instant" ] = g->instant();
        j[ "provenance" ] = g->provenance();
    }
    return j;
}

void emit( std::ostream& out, const json& j ) { out << j.dump( 2 ) << "\n"; }

DerivedTrace load_log( const std::string& path ) { return run( parse_event_log( read_file( path ) ) ); }

int cmd_parse( const Options& o, std::ostream& out )
{
    if ( o.temporal )
    {
        const auto f = parse_temporal( o.formula );
        if ( o.json )
            emit( out, json{ { "ok", true }, { "layer", "temporal" }, { "printed", print_temporal( f ) },
                             { "ast", dump_temporal( f ) } } );
        else
            out << print_temporal( f ) << "\n" << dump_temporal( f ) << "\n";
        return exit_ok;
    }
    const auto f = parse_static( o.formula );
    const bool mono = classify_monolithic( f ) == Classification::Monolithic;
    if ( o.json )
        emit( out, json{ { "ok", true },
                         { "layer", "static" },
                         { "printed", print_static( f ) },
                         { "ast", dump_static( f ) },
                         { "monolithic", mono } } );
    else
        out << print_static( f ) << "\n" << dump_static( f ) << "\n";
    return exit_ok;
}

int cmd_eval( const Options& o, std::ostream& out )
{
    const auto m = load_model( o.model, o.allow_invalid );
    const auto w = m.world_index( o.world );
    if ( !w )
        throw FormatError{ "unknown world '" + o.world + "'" };
    const auto f = parse_static( o.formula );
    const bool v = eval_static( m, *w, f );
    if ( o.json )
        emit( out, json{ { "ok", true }, { "world", o.world }, { "formula", print_static( f ) }, { "value", v } } );
    else
        out << ( v ? "true" : "false" ) << "\n";
    return exit_ok;
}

int cmd_check_model( const Options& o, std::ostream& out )
{
    const auto m = load_model( o.model, true );
    const auto report = validate_sc_model( m );
    if ( o.json )
        emit( out, to_json( m, report ) );
    else if ( report.ok() )
        out << "ok\n";
    else
        for ( const auto& v : report.violations )
            out << describe( m, v ) << "\n";
    return report.ok() ? exit_ok : exit_failure;
}

int cmd_validate_da( const Options& o, std::ostream& out )
{
    const auto tm = load_trace( o.trace, o.allow_invalid );
    const auto report = validate_da_model( tm );
    if ( o.json )
        emit( out, to_json( tm, report ) );
    else if ( report.ok() )
        out << "ok\n";
    else
        for ( const auto& v : report.violations )
            out << describe( tm, v ) << "\n";
    return report.ok() ? exit_ok : exit_failure;
}

int cmd_simulate( const Options& o, std::ostream& out )
{
    const auto dt = load_log( o.log );
    if ( !o.export_trace.empty() )
    {
        std::ofstream f{ o.export_trace };
        if ( !f )
            throw FormatError{ "cannot write '" + o.export_trace + "'" };
        f << trace_to_json( to_trace_model( dt ) ).dump( 1 ) << "\n";
    }
    if ( o.json )
    {
        auto j = to_json( dt );
        j[ "ok" ] = true;
        emit( out, j );
    }
    else
        out << describe( dt );
    return exit_ok;
}

int cmd_query( const Options& o, std::ostream& out )
{
    const auto dt = load_log( o.log );
    const auto f = parse_temporal( o.formula );
    const bool v = query( dt, f, o.instant );
    if ( o.json )
        emit( out, json{ { "ok", true }, { "formula", print_temporal( f ) }, { "t", o.instant }, { "value", v } } );
    else
        out << ( v ? "true" : "false" ) << "\n";
    return exit_ok;
}

int cmd_explain( const Options& o, std::ostream& out )
{
    const auto dt = load_log( o.log );
    const auto ex = explain( dt, parse_static( o.fact ), o.instant );
    if ( o.json )
    {
        auto j = to_json( ex );
        j[ "ok" ] = true;
        emit( out, j );
    }
    else
        for ( const auto& l : ex.lines )
            out << l << "\n";
    return exit_ok;
}

int cmd_replay( const Options& o, std::ostream& out )
{
    const auto& names = scenario_names();
    if ( std::find( names.begin(), names.end(), o.scenario ) == names.end() )
        throw FormatError{ "unknown scenario '" + o.scenario + "' (known: lifecycle, repository)" };
    const auto tr = replay( o.scenario );
    if ( o.json )
        emit( out, json{ { "ok", true }, { "scenario", tr.name }, { "lines", tr.lines }, { "trace", to_json( tr.trace ) } } );
    else
        out << tr.text();
    return exit_ok;
}

int cmd_soundness( const Options& o, std::ostream& out )
{
    std::vector< SuiteReport > reports;
    const auto& s = o.suite;
    if ( !o.model.empty() )
    {
        const std::vector< SCModel > models{ load_model( o.model, o.allow_invalid ) };
        reports.push_back( static_soundness( models, o.seed ) );
    }
    else
    {
        if ( s == "all" || s == "static" )
            reports.push_back( static_soundness( o.seed, o.cases ) );
        if ( s == "all" || s == "temporal" )
            reports.push_back( temporal_soundness( o.seed, o.cases ) );
        if ( s == "all" || s == "agreement" )
            reports.push_back( axiom_agreement( o.seed, std::min< std::size_t >( o.cases, 200 ) ) );
        if ( s == "all" || s == "interdependence" )
            reports.push_back( interdependence( o.seed, o.cases ) );
        if ( s == "all" || s == "bite" )
            reports.push_back( bite( o.seed, o.cases ) );
        if ( s == "all" || s == "congruence" )
            reports.push_back( congruence( o.seed, std::min< std::size_t >( o.cases, 100 ) ) );
    }
    bool ok = true;
    json suites = json::array();
    for ( const auto& r : reports )
    {
        ok = ok && r.ok();
        suites.push_back( r.to_json() );
    }
    if ( o.json )
        emit( out, json{ { "ok", ok }, { "seed", o.seed }, { "suites", suites } } );
    else
        for ( const auto& r : reports )
            out << r.text();
    return ok ? exit_ok : exit_failure;
}

} // namespace

int dispatch( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    Options o;
    if ( const char* env = std::getenv( "DEEMED_ABILITY_SEED" ) )
    {
        try
        {
            o.seed = std::stoull( env );
        }
        catch ( const std::exception& )
        {
            err << "DEEMED_ABILITY_SEED is not an unsigned integer: " << env << "\n";
            return exit_usage;
        }
    }

    CLI::App app{ "Toolkit for the logic of deemed ability", "deemed" };
    app.require_subcommand( 1 );
    app.set_version_flag( "--version", "0.3.0" );
    auto json_flag = [ & ]( CLI::App* sub ) { sub->add_flag( "--json", o.json, "Machine-readable output" ); };

    auto* parse = app.add_subcommand( "parse", "Parse and print a formula" );
    parse->add_option( "-f,--formula", o.formula, "Formula text" )->required();
    parse->add_flag( "--temporal", o.temporal, "Parse in the temporal layer" );
    json_flag( parse );

    auto* eval = app.add_subcommand( "eval", "Evaluate a static formula at a world" );
    eval->add_option( "-m,--model", o.model, "Model file" )->required();
    eval->add_option( "-w,--world", o.world, "World id" )->required();
    eval->add_option( "-f,--formula", o.formula, "Static formula" )->required();
    eval->add_flag( "--allow-invalid", o.allow_invalid, "Accept models violating the constraints" );
    json_flag( eval );

    auto* check = app.add_subcommand( "check-model", "Validate an SC-model" );
    check->add_option( "-m,--model", o.model, "Model file" )->required();
    json_flag( check );

    auto* vda = app.add_subcommand( "validate-da", "Check C1-C3 on a trace" );
    vda->add_option( "-t,--trace", o.trace, "Trace file" )->required();
    vda->add_flag( "--allow-invalid", o.allow_invalid, "Accept instants violating the static constraints" );
    json_flag( vda );

    auto* sim = app.add_subcommand( "simulate", "Ground an event log" );
    sim->add_option( "-l,--log", o.log, "Event log (JSON Lines)" )->required();
    sim->add_option( "--export-trace", o.export_trace, "Write the trace model here" );
    json_flag( sim );

    auto* q = app.add_subcommand( "query", "Evaluate a temporal formula over a grounded log" );
    q->add_option( "-l,--log", o.log, "Event log (JSON Lines)" )->required();
    q->add_option( "-f,--formula", o.formula, "Temporal formula" )->required();
    q->add_option( "-t,--instant", o.instant, "Instant" )->required();
    json_flag( q );

    auto* ex = app.add_subcommand( "explain", "Trace a fact back to its grounds" );
    ex->add_option( "-l,--log", o.log, "Event log (JSON Lines)" )->required();
    ex->add_option( "--fact", o.fact, "Dabl, Conf or Disc fact" )->required();
    ex->add_option( "-t,--instant", o.instant, "Instant" )->required();
    json_flag( ex );

    auto* rep = app.add_subcommand( "replay", "Replay a bundled scenario" );
    rep->add_option( "name", o.scenario, "lifecycle or repository" )->required();
    json_flag( rep );

    auto* snd = app.add_subcommand( "soundness", "Run the randomized soundness suites" );
    snd->add_option( "--seed", o.seed, "Suite seed" );
    snd->add_option( "--cases", o.cases, "Cases per suite" );
    snd->add_option( "--suite", o.suite, "Suite to run" )
        ->check( CLI::IsMember( { "all", "static", "temporal", "agreement", "interdependence", "bite", "congruence" } ) );
    snd->add_option( "-m,--model", o.model, "Run the static checks on this model only" );
    snd->add_flag( "--allow-invalid", o.allow_invalid, "Accept a model violating the constraints" );
    json_flag( snd );

    std::vector< std::string > argv_store{ "deemed" };
    argv_store.insert( argv_store.end(), args.begin(), args.end() );
    std::vector< char* > argv;
    for ( auto& a : argv_store )
        argv.push_back( a.data() );

    try
    {
        app.parse( static_cast< int >( argv.size() ), argv.data() );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e, out, err );
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if ( *parse ) return cmd_parse( o, out );
        if ( *eval ) return cmd_eval( o, out );
        if ( *check ) return cmd_check_model( o, out );
        if ( *vda ) return cmd_validate_da( o, out );
        if ( *sim ) return cmd_simulate( o, out );
        if ( *q ) return cmd_query( o, out );
        if ( *ex ) return cmd_explain( o, out );
        if ( *rep ) return cmd_replay( o, out );
        if ( *snd ) return cmd_soundness( o, out );
    }
    catch ( const Error& e )
    {
        if ( o.json )
            emit( out, json{ { "ok", false }, { "error", error_json( e ) } } );
        else
            err << error_type( e ) << ": " << e.what() << "\n";
        return is_usage_error( e ) ? exit_usage : exit_failure;
    }
    return exit_usage;
}

} // namespace deemed::cli
