#pragma once

#include <iosfwd>

namespace itr::cli {

/// Exit codes: 0 ok, 1 usage, 2 I/O, 3 format or corruption.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace itr::cli
