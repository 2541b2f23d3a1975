#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace when2tool::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad arguments, missing artifact, write failure
inline constexpr int kExitBackend = 3;  // backend unreachable after retries

/// Entry point shared by the executable and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace when2tool::cli
