#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alignkit::cli {

/// Runs one invocation. `args` excludes the program name. Returns the exit
/// code: 0 success, 1 input error, 2 internal error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace alignkit::cli
