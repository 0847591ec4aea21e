#ifndef RELDIFF_CLI_HPP
#define RELDIFF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace reldiff {
namespace cli {

/// Dispatches a full command line. Exit codes: 0 success, 2 validation
/// error (message names the violated precondition), 3 numerical
/// non-convergence. Reports go to output_path when given, else to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cli
} // namespace reldiff

#endif
