#pragma once

#include <iosfwd>

namespace holoalg::cli {

// Exit codes: 0 success, 1 usage / I/O / schema error, 2 the input was read
// but fails a mathematical requirement (not associative, not admissible, ...).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holoalg::cli
