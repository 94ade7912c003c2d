#pragma once

#include <iosfwd>

namespace subgauss {

/// Exit codes: 0 success, 1 check or trace failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subgauss
