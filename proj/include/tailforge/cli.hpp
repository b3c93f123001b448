#ifndef TAILFORGE_CLI_HPP
#define TAILFORGE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tailforge {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "start:stop:count", inclusive linspace; a bare number is a single point.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace tailforge

#endif
