#ifndef KOSC_CLI_HPP
#define KOSC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kosc::cli
{

/// Stable exit codes of the command-line tool.
enum ExitCode : int
{
    success          = 0,
    check_failure    = 1,
    usage_error      = 2,
};

/// Runs one invocation. `args` excludes the program name. Results go to `out`
/// (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kosc::cli

#endif // KOSC_CLI_HPP
