#pragma once

namespace qestkit {

// Full command-line front end. Returns the process exit code:
// 0 success, 1 invalid input, 2 regularity failure, 3 solver failure.
int run_cli(int argc, const char* const* argv);

}  // namespace qestkit
