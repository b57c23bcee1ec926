#pragma once

#include <iosfwd>

namespace mtspec::cli {

/// Exit codes: 0 success, 2 usage or input error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtspec::cli
