#pragma once

#include <string>
#include <string_view>

#include "deemed/formula.hpp"

namespace deemed
{

/// Parses a static formula. Precedence, loosest first: `->` (right
/// associative), `|`, `&`, then the unary operators `!` and the modalities.
/// Throws ParseError on malformed input.
[[nodiscard]] Formula parse_static( std::string_view text );

/// Parses a temporal formula. Boolean connectives outside modality
/// arguments are temporal connectives; modality arguments are static
/// formulas. `U`, `S`, `W` bind tighter than `&` and are non-associative.
/// Derived operators (F G H P W | -> T _|_) are stored expanded.
[[nodiscard]] TemporalFormula parse_temporal( std::string_view text );

[[nodiscard]] std::string print_static( const Formula& f );

/// Prints in the concrete syntax, folding expanded derived operators back
/// into their sugared spelling. parse_temporal(print_temporal(f)) == f.
[[nodiscard]] std::string print_temporal( const TemporalFormula& f );

/// Readable AST dump, e.g. `Dabl({a}, Prop(p))`.
[[nodiscard]] std::string dump_static( const Formula& f );
[[nodiscard]] std::string dump_temporal( const TemporalFormula& f );

} // namespace deemed
