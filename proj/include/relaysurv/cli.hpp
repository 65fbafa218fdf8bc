#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relaysurv {

// Full command-line entry point, parameterized on streams so tests can run
// it in-process. `args` excludes the program name. Returns the process exit
// code: 0 success, 1 failed checks or runtime errors, 2 usage/config errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace relaysurv
