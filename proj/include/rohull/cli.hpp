#pragma once

#include <iosfwd>

namespace rohull {

/// Exit codes: 0 when every certificate holds, 2 when one fails, 1 for
/// usage errors (bad flags, unreadable input, unsupported mode).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rohull
