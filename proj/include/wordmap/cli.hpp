#ifndef WORDMAP_CLI_HPP
#define WORDMAP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wordmap::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

/// Runs one command. `args` excludes the program name. JSON goes to --out or
/// `out`; a short summary goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wordmap::cli

#endif  // WORDMAP_CLI_HPP
