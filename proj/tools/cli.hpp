#ifndef GSTOWER_CLI_HPP
#define GSTOWER_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gstower::cli {

// Runs one command line (without argv[0]).  Returns the process exit code:
// 0 on success, 1 when a verification suite reports a failure, 2 on bad
// flags or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gstower::cli

#endif
