#include <benchmark/benchmark.h>

#include "deemed/canonical.hpp"
#include "deemed/engine.hpp"
#include "deemed/harness.hpp"
#include "deemed/random.hpp"
#include "deemed/scenarios.hpp"
#include "deemed/syntax.hpp"

using namespace deemed;

namespace
{

void eval_temporal_random( benchmark::State& state )
{
    RandomTraceParams params;
    params.max_horizon = static_cast< std::size_t >( state.range( 0 ) );
    const auto tm = random_trace( 1, params );
    const auto f = parse_temporal( "(Dabl{a} p W Disc{a} p) & (Dabl{a} p -> Conf{a} p | Dabl{a} p S Conf{a} p)" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( eval_trace( tm, f ) );
}
BENCHMARK( eval_temporal_random )->Arg( 4 )->Arg( 6 );

void engine_scenarios( benchmark::State& state )
{
    const auto log = parse_event_log( scenario_jsonl( "lifecycle" ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( run( log ) );
}
BENCHMARK( engine_scenarios );

void engine_random_log( benchmark::State& state )
{
    const auto log = random_event_log( static_cast< std::uint64_t >( state.range( 0 ) ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( run( log ) );
}
BENCHMARK( engine_random_log )->Arg( 1 )->Arg( 2 )->Arg( 3 );

void canonical_key_props( benchmark::State& state )
{
    std::vector< std::string > props;
    for ( int i = 0; i < state.range( 0 ); ++i )
        props.push_back( "x" + std::to_string( i ) );
    const Universe u{ props };
    Rng rng{ 5 };
    FormulaShape shape{ props, {}, 5, false, false, true };
    const auto f = random_static_formula( rng, shape );
    for ( auto _ : state )
        benchmark::DoNotOptimize( canonical_key( f, u ) );
}
BENCHMARK( canonical_key_props )->Arg( 3 )->Arg( 8 )->Arg( 12 );

} // namespace

BENCHMARK_MAIN();
