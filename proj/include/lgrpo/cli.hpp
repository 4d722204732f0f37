#ifndef LGRPO_CLI_HPP
#define LGRPO_CLI_HPP

#include <iosfwd>

namespace lgrpo {

/// Exit codes: 0 success, 1 library error (diagnostic names the error class), 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lgrpo

#endif
