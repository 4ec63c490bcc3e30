#ifndef AIA_TOOLS_CLI_HH_
#define AIA_TOOLS_CLI_HH_

#include <iosfwd>
#include <string>
#include <vector>

namespace aia::cli {

enum ExitCode : int {
    Ok = 0,
    PropertyFails = 1,
    UsageError = 2,
    ResourceCap = 3,
};

/**
 * Runs one `aiatool` invocation. `args` excludes the program name. Everything
 * the command prints goes to `out`, diagnostics to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace aia::cli

#endif // AIA_TOOLS_CLI_HH_
