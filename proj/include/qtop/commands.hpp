#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtop {

/// One CLI invocation; `args` excludes the program name. Prints the report to `out`
/// (text or machine form) and diagnostics to `err`. Returns 0 pass, 1 fail, 2 error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qtop
