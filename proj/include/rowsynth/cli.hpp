#ifndef ROWSYNTH_CLI_HPP_
#define ROWSYNTH_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace rowsynth::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr unsigned long long kDefaultSeed = 0xDA7A;

enum ExitStatus : int { kOk = 0, kValidationError = 1, kUsageError = 2 };

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit status. Output goes to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rowsynth::cli

#endif  // ROWSYNTH_CLI_HPP_
