#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schubert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitResourceCap = 2;

// Runs one subcommand. Results go to `out`; usage text, errors and the
// manifest (when no file destination is given) go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schubert::cli
