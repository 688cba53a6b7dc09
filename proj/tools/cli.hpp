#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deemed::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Runs one `deemed` invocation; `args` excludes the program name.
int dispatch( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace deemed::cli
