#pragma once

#include <string>
#include <vector>

namespace metabbo {

// Full command-line front end. Takes argv[1..] and returns the process exit
// code: 0 success, 2 usage error, 3 configuration/data error, 4 runtime
// failure. Testable without a process boundary.
int cli_main(const std::vector<std::string>& args);

} // namespace metabbo
