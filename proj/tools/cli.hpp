#pragma once

#include <iosfwd>

namespace metastack::cli {

/// Exit codes of the `metastack` tool.
enum ExitCode : int {
    ok = 0,
    unexpected = 1,
    config_error = 2,
    duplicate = 3,
    not_found = 4,
};

/// Entry point of the command line tool, with injectable streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace metastack::cli
