#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dasep::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Run one command. `args` excludes the program name. Returns the process
/// exit status: 0 on success, 1 on domain errors or failed checks, 2 on
/// usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dasep::cli
