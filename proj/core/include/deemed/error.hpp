#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace deemed
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error
{
public:
    ParseError( std::size_t offset, std::vector< std::string > expected, const std::string& message );

    [[nodiscard]] std::size_t offset() const { return _offset; }
    [[nodiscard]] const std::vector< std::string >& expected() const { return _expected; }

private:
    std::size_t _offset;
    std::vector< std::string > _expected;
};

/// A Boolean combination was supplied where a monolithic formula is required.
class MonolithicViolation : public Error
{
public:
    using Error::Error;
};

class NotPropositional : public Error
{
public:
    using Error::Error;
};

class OutOfUniverse : public Error
{
public:
    using Error::Error;
};

class UnknownAgent : public Error
{
public:
    using Error::Error;
};

class InstantOutOfRange : public Error
{
public:
    using Error::Error;
};

/// Instants of a trace do not share a world list.
class FrameMismatch : public Error
{
public:
    using Error::Error;
};

class CapExceeded : public Error
{
public:
    using Error::Error;
};

/// Malformed model, trace, or event-log input.
class FormatError : public Error
{
public:
    using Error::Error;
};

class InvalidModel : public Error
{
public:
    using Error::Error;
};

/// Base of the engine's grounding failures. Carries the instant and the rule
/// citations that led to the failure.
class EngineError : public Error
{
public:
    EngineError( std::size_t instant, std::vector< std::string > provenance, const std::string& message )
        : Error{ message }, _instant{ instant }, _provenance{ std::move( provenance ) } {}

    [[nodiscard]] std::size_t instant() const { return _instant; }
    [[nodiscard]] const std::vector< std::string >& provenance() const { return _provenance; }

private:
    std::size_t _instant;
    std::vector< std::string > _provenance;
};

class InconsistencyError : public EngineError
{
public:
    using EngineError::EngineError;
};

class TaskParadox : public EngineError
{
public:
    using EngineError::EngineError;
};

class AgencyContradiction : public EngineError
{
public:
    using EngineError::EngineError;
};

class UnknownFact : public Error
{
public:
    using Error::Error;
};

class GoldenMismatch : public Error
{
public:
    using Error::Error;
};

} // namespace deemed
