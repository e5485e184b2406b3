#pragma once

#include <iosfwd>

namespace localpt {

// Exit codes: 0 success or PASS, 1 FAIL verdict, 2 usage or runtime error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace localpt
