#include "deemed/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>

#include "deemed/error.hpp"

namespace deemed
{

namespace
{

std::string join( const std::vector< std::string >& items )
{
    std::string out;
    for ( std::size_t i = 0; i < items.size(); ++i )
    {
        if ( i != 0 )
            out += ", ";
        out += items[ i ];
    }
    return out;
}

std::string format_parse_error( std::size_t offset, const std::vector< std::string >& expected,
                                const std::string& message )
{
    std::string out = "parse error at offset " + std::to_string( offset ) + ": " + message;
    if ( !expected.empty() )
        out += " (expected " + join( expected ) + ")";
    return out;
}

} // namespace

ParseError::ParseError( std::size_t offset, std::vector< std::string > expected, const std::string& message )
    : Error{ format_parse_error( offset, expected, message ) }, _offset{ offset }, _expected{ std::move( expected ) }
{
}

namespace
{

enum class Tok
{
    Ident,
    Bang,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Bottom,
    End,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t offset;
};

constexpr std::array keywords{ "T", "U", "S", "W", "F", "G", "H", "P", "Dabl", "Conf", "Disc", "E", "Att", "Task", "Agree" };

bool is_keyword( std::string_view s )
{
    return std::find( keywords.begin(), keywords.end(), s ) != keywords.end();
}

std::optional< StaticOp > modality_of( std::string_view s )
{
    if ( s == "Dabl" ) return StaticOp::Dabl;
    if ( s == "Conf" ) return StaticOp::Conf;
    if ( s == "Disc" ) return StaticOp::Disc;
    if ( s == "E" ) return StaticOp::Brings;
    if ( s == "Att" ) return StaticOp::Attempts;
    if ( s == "Task" ) return StaticOp::Task;
    if ( s == "Agree" ) return StaticOp::Agree;
    return std::nullopt;
}

std::vector< Token > tokenize( std::string_view text )
{
    std::vector< Token > out;
    std::size_t i = 0;
    auto ident_char = []( unsigned char c ) { return std::isalnum( c ) || c == '_'; };
    while ( i < text.size() )
    {
        const unsigned char c = text[ i ];
        if ( std::isspace( c ) )
        {
            ++i;
            continue;
        }
        if ( text.substr( i, 3 ) == "_|_" )
        {
            out.push_back( { Tok::Bottom, "_|_", i } );
            i += 3;
            continue;
        }
        if ( text.substr( i, 2 ) == "->" )
        {
            out.push_back( { Tok::Arrow, "->", i } );
            i += 2;
            continue;
        }
        if ( ident_char( c ) )
        {
            const auto start = i;
            while ( i < text.size() && ident_char( static_cast< unsigned char >( text[ i ] ) ) )
                ++i;
            out.push_back( { Tok::Ident, std::string{ text.substr( start, i - start ) }, start } );
            continue;
        }
        Tok kind;
        switch ( c )
        {
        case '!': kind = Tok::Bang; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semi; break;
        default:
            throw ParseError{ i, {}, std::string{ "unexpected character '" } + static_cast< char >( c ) + "'" };
        }
        out.push_back( { kind, std::string( 1, static_cast< char >( c ) ), i } );
        ++i;
    }
    out.push_back( { Tok::End, "", text.size() } );
    return out;
}

class Parser
{
public:
    explicit Parser( std::string_view text ) : _tokens{ tokenize( text ) } {}

    Formula static_formula_to_end()
    {
        auto f = static_implies();
        expect_end();
        return f;
    }

    TemporalFormula temporal_formula_to_end()
    {
        auto f = temporal_implies();
        expect_end();
        return f;
    }

private:
    const Token& peek() const { return _tokens[ _pos ]; }
    const Token& advance() { return _tokens[ _pos++ ]; }

    bool peek_ident( std::string_view s ) const { return peek().kind == Tok::Ident && peek().text == s; }

    [[noreturn]] void fail( std::vector< std::string > expected, const std::string& message ) const
    {
        throw ParseError{ peek().offset, std::move( expected ), message };
    }

    std::string found() const
    {
        return peek().kind == Tok::End ? std::string{ "end of input" } : "'" + peek().text + "'";
    }

    void expect( Tok kind, const char* spelling )
    {
        if ( peek().kind != kind )
            fail( { std::string{ "'" } + spelling + "'" }, "unexpected " + found() );
        advance();
    }

    void expect_end()
    {
        if ( peek().kind != Tok::End )
            fail( { "end of input" }, "unexpected " + found() );
    }

    std::string prop_name()
    {
        const auto& t = peek();
        if ( t.text.starts_with( "__" ) )
            fail( { "proposition" }, "identifiers starting with '__' are reserved" );
        if ( is_keyword( t.text ) )
            fail( { "proposition" }, "'" + t.text + "' is a reserved keyword" );
        return advance().text;
    }

    Group group()
    {
        expect( Tok::LBrace, "{" );
        std::vector< AgentId > members;
        if ( peek().kind != Tok::RBrace )
        {
            for ( ;; )
            {
                if ( peek().kind != Tok::Ident )
                    fail( { "agent name" }, "unexpected " + found() );
                members.push_back( advance().text );
                if ( peek().kind == Tok::Comma )
                {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect( Tok::RBrace, "}" );
        return Group{ std::move( members ) };
    }

    // Modal formula after the keyword has been seen; arguments are static.
    Formula modal_formula( StaticOp op )
    {
        advance();
        auto g = group();
        if ( is_binary_modality( op ) )
        {
            expect( Tok::LParen, "(" );
            auto objective = static_implies();
            expect( Tok::Semi, ";" );
            auto deadline = static_implies();
            expect( Tok::RParen, ")" );
            return Formula::modal( op, std::move( g ), std::move( objective ), std::move( deadline ) );
        }
        return Formula::modal( op, std::move( g ), static_unary() );
    }

    // --- static layer -----------------------------------------------------

    Formula static_implies()
    {
        auto lhs = static_or();
        if ( peek().kind == Tok::Arrow )
        {
            advance();
            return Formula::implies( std::move( lhs ), static_implies() );
        }
        return lhs;
    }

    Formula static_or()
    {
        auto lhs = static_and();
        while ( peek().kind == Tok::Bar )
        {
            advance();
            lhs = Formula::lor( std::move( lhs ), static_and() );
        }
        return lhs;
    }

    Formula static_and()
    {
        auto lhs = static_unary();
        while ( peek().kind == Tok::Amp )
        {
            advance();
            lhs = Formula::land( std::move( lhs ), static_unary() );
        }
        return lhs;
    }

    Formula static_unary()
    {
        const auto& t = peek();
        switch ( t.kind )
        {
        case Tok::Bang:
            advance();
            return Formula::lnot( static_unary() );
        case Tok::Bottom:
            advance();
            return Formula::bottom();
        case Tok::LParen:
        {
            advance();
            auto f = static_implies();
            expect( Tok::RParen, ")" );
            return f;
        }
        case Tok::Ident:
            if ( auto op = modality_of( t.text ) )
                return modal_formula( *op );
            if ( t.text == "T" )
            {
                advance();
                return Formula::top();
            }
            if ( t.text == "U" || t.text == "S" || t.text == "W" || t.text == "F" || t.text == "G" ||
                 t.text == "H" || t.text == "P" )
                fail( { "static formula" }, "temporal operator '" + t.text + "' is not allowed in a static formula" );
            return Formula::prop( prop_name() );
        default:
            fail( { "proposition", "'!'", "'('", "modality", "'T'", "'_|_'" }, "unexpected " + found() );
        }
    }

    // --- temporal layer ---------------------------------------------------

    TemporalFormula temporal_implies()
    {
        auto lhs = temporal_or();
        if ( peek().kind == Tok::Arrow )
        {
            advance();
            return TemporalFormula::implies( std::move( lhs ), temporal_implies() );
        }
        return lhs;
    }

    TemporalFormula temporal_or()
    {
        auto lhs = temporal_and();
        while ( peek().kind == Tok::Bar )
        {
            advance();
            lhs = TemporalFormula::lor( std::move( lhs ), temporal_and() );
        }
        return lhs;
    }

    TemporalFormula temporal_and()
    {
        auto lhs = temporal_binary();
        while ( peek().kind == Tok::Amp )
        {
            advance();
            lhs = TemporalFormula::land( std::move( lhs ), temporal_binary() );
        }
        return lhs;
    }

    bool peek_binary_temporal() const { return peek_ident( "U" ) || peek_ident( "S" ) || peek_ident( "W" ); }

    TemporalFormula temporal_binary()
    {
        auto lhs = temporal_unary();
        if ( !peek_binary_temporal() )
            return lhs;
        const auto op = advance().text;
        auto rhs = temporal_unary();
        if ( peek_binary_temporal() )
            fail( { "')'" }, "U, S and W are non-associative; parenthesize chained uses" );
        if ( op == "U" )
            return TemporalFormula::until( std::move( lhs ), std::move( rhs ) );
        if ( op == "S" )
            return TemporalFormula::since( std::move( lhs ), std::move( rhs ) );
        return TemporalFormula::weak_until( std::move( lhs ), std::move( rhs ) );
    }

    TemporalFormula temporal_unary()
    {
        const auto& t = peek();
        switch ( t.kind )
        {
        case Tok::Bang:
            advance();
            return TemporalFormula::lnot( temporal_unary() );
        case Tok::Bottom:
            advance();
            return TemporalFormula::bottom();
        case Tok::LParen:
        {
            advance();
            auto f = temporal_implies();
            expect( Tok::RParen, ")" );
            return f;
        }
        case Tok::Ident:
            if ( auto op = modality_of( t.text ) )
                return TemporalFormula::mono( modal_formula( *op ) );
            if ( t.text == "T" )
            {
                advance();
                return TemporalFormula::top();
            }
            if ( t.text == "F" || t.text == "G" || t.text == "H" || t.text == "P" )
            {
                const auto op = advance().text;
                auto arg = temporal_unary();
                if ( op == "F" ) return TemporalFormula::eventually( std::move( arg ) );
                if ( op == "G" ) return TemporalFormula::globally( std::move( arg ) );
                if ( op == "P" ) return TemporalFormula::past( std::move( arg ) );
                return TemporalFormula::has_always( std::move( arg ) );
            }
            if ( t.text == "U" || t.text == "S" || t.text == "W" )
                fail( { "formula" }, "binary operator '" + t.text + "' is missing its left operand" );
            return TemporalFormula::mono( Formula::prop( prop_name() ) );
        default:
            fail( { "proposition", "'!'", "'('", "modality", "temporal operator" }, "unexpected " + found() );
        }
    }

    std::vector< Token > _tokens;
    std::size_t _pos = 0;
};

// --- printing ---------------------------------------------------------------

const char* modality_keyword( StaticOp op )
{
    switch ( op )
    {
    case StaticOp::Dabl: return "Dabl";
    case StaticOp::Conf: return "Conf";
    case StaticOp::Disc: return "Disc";
    case StaticOp::Brings: return "E";
    case StaticOp::Attempts: return "Att";
    case StaticOp::Task: return "Task";
    case StaticOp::Agree: return "Agree";
    default: return "?";
    }
}

void print_static_to( const Formula& f, std::string& out )
{
    switch ( f.op() )
    {
    case StaticOp::Prop:
        out += f.name() == true_atom ? "T" : f.name();
        return;
    case StaticOp::Top:
        out += "T";
        return;
    case StaticOp::Bottom:
        out += "_|_";
        return;
    case StaticOp::Not:
        out += "!";
        print_static_to( f.arg(), out );
        return;
    case StaticOp::And:
    case StaticOp::Or:
    case StaticOp::Implies:
        out += "(";
        print_static_to( f.arg( 0 ), out );
        out += f.op() == StaticOp::And ? " & " : f.op() == StaticOp::Or ? " | " : " -> ";
        print_static_to( f.arg( 1 ), out );
        out += ")";
        return;
    case StaticOp::Task:
    case StaticOp::Agree:
        out += modality_keyword( f.op() );
        out += f.group().str();
        out += "(";
        print_static_to( f.arg( 0 ), out );
        out += "; ";
        print_static_to( f.arg( 1 ), out );
        out += ")";
        return;
    default:
        out += modality_keyword( f.op() );
        out += f.group().str();
        out += " ";
        print_static_to( f.arg(), out );
        return;
    }
}

// Matches Not(Until(T, Not x)) / Not(Since(T, Not x)).
const TemporalFormula* match_always( const TemporalFormula& f, TemporalOp which )
{
    if ( f.op() != TemporalOp::Not )
        return nullptr;
    const auto& inner = f.arg();
    if ( inner.op() != which || !inner.arg( 0 ).is_true_leaf() || inner.arg( 1 ).op() != TemporalOp::Not )
        return nullptr;
    return &inner.arg( 1 ).arg();
}

// Matches Not(And(Not a, Not b)).
std::optional< std::pair< const TemporalFormula*, const TemporalFormula* > > match_or( const TemporalFormula& f )
{
    if ( f.op() != TemporalOp::Not || f.arg().op() != TemporalOp::And )
        return std::nullopt;
    const auto& conj = f.arg();
    if ( conj.arg( 0 ).op() != TemporalOp::Not || conj.arg( 1 ).op() != TemporalOp::Not )
        return std::nullopt;
    return std::pair{ &conj.arg( 0 ).arg(), &conj.arg( 1 ).arg() };
}

void print_temporal_to( const TemporalFormula& f, std::string& out )
{
    switch ( f.op() )
    {
    case TemporalOp::Mono:
        print_static_to( f.leaf(), out );
        return;
    case TemporalOp::Not:
        if ( f.arg().is_true_leaf() )
        {
            out += "_|_";
            return;
        }
        if ( auto x = match_always( f, TemporalOp::Until ) )
        {
            out += "G ";
            print_temporal_to( *x, out );
            return;
        }
        if ( auto x = match_always( f, TemporalOp::Since ) )
        {
            out += "H ";
            print_temporal_to( *x, out );
            return;
        }
        if ( auto disj = match_or( f ) )
        {
            const auto& [ a, b ] = *disj;
            // (a U b) | G a  is  a W b
            if ( a->op() == TemporalOp::Until )
                if ( auto g = match_always( *b, TemporalOp::Until ); g && *g == a->arg( 0 ) )
                {
                    out += "(";
                    print_temporal_to( a->arg( 0 ), out );
                    out += " W ";
                    print_temporal_to( a->arg( 1 ), out );
                    out += ")";
                    return;
                }
            out += "(";
            print_temporal_to( *a, out );
            out += " | ";
            print_temporal_to( *b, out );
            out += ")";
            return;
        }
        out += "!";
        print_temporal_to( f.arg(), out );
        return;
    case TemporalOp::And:
        out += "(";
        print_temporal_to( f.arg( 0 ), out );
        out += " & ";
        print_temporal_to( f.arg( 1 ), out );
        out += ")";
        return;
    case TemporalOp::Until:
    case TemporalOp::Since:
        if ( f.arg( 0 ).is_true_leaf() )
        {
            out += f.op() == TemporalOp::Until ? "F " : "P ";
            print_temporal_to( f.arg( 1 ), out );
            return;
        }
        out += "(";
        print_temporal_to( f.arg( 0 ), out );
        out += f.op() == TemporalOp::Until ? " U " : " S ";
        print_temporal_to( f.arg( 1 ), out );
        out += ")";
        return;
    }
}

void dump_static_to( const Formula& f, std::string& out )
{
    switch ( f.op() )
    {
    case StaticOp::Prop: out += "Prop(" + f.name() + ")"; return;
    case StaticOp::Top: out += "Top"; return;
    case StaticOp::Bottom: out += "Bottom"; return;
    case StaticOp::Not: out += "Not("; break;
    case StaticOp::And: out += "And("; break;
    case StaticOp::Or: out += "Or("; break;
    case StaticOp::Implies: out += "Implies("; break;
    default:
        out += modality_keyword( f.op() );
        out += "(" + f.group().str() + ", ";
        break;
    }
    for ( std::size_t i = 0; i < f.arity(); ++i )
    {
        if ( i != 0 )
            out += ", ";
        dump_static_to( f.arg( i ), out );
    }
    out += ")";
}

void dump_temporal_to( const TemporalFormula& f, std::string& out )
{
    switch ( f.op() )
    {
    case TemporalOp::Mono:
        out += "Mono(";
        dump_static_to( f.leaf(), out );
        out += ")";
        return;
    case TemporalOp::Not: out += "Not("; break;
    case TemporalOp::And: out += "And("; break;
    case TemporalOp::Until: out += "Until("; break;
    case TemporalOp::Since: out += "Since("; break;
    }
    for ( std::size_t i = 0; i < f.arity(); ++i )
    {
        if ( i != 0 )
            out += ", ";
        dump_temporal_to( f.arg( i ), out );
    }
    out += ")";
}

} // namespace

Formula parse_static( std::string_view text )
{
    return Parser{ text }.static_formula_to_end();
}

TemporalFormula parse_temporal( std::string_view text )
{
    return Parser{ text }.temporal_formula_to_end();
}

std::string print_static( const Formula& f )
{
    std::string out;
    print_static_to( f, out );
    return out;
}

std::string print_temporal( const TemporalFormula& f )
{
    std::string out;
    print_temporal_to( f, out );
    return out;
}

std::string dump_static( const Formula& f )
{
    std::string out;
    dump_static_to( f, out );
    return out;
}

std::string dump_temporal( const TemporalFormula& f )
{
    std::string out;
    dump_temporal_to( f, out );
    return out;
}

} // namespace deemed
