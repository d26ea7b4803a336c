#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mueller::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

// args excludes the program name. Returns the process exit status.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mueller::cli
