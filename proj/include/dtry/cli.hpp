#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtry::cli {

/// Exit codes of the dtry tool.
enum Exit : int { Ok = 0, Invalid = 1, IoError = 2, NotFound = 3 };

/// Runs one `dtry` invocation. `args` excludes the program name. Documents
/// go to `out`; diagnostics go to `err` as LINE:CODE:MESSAGE.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dtry::cli
