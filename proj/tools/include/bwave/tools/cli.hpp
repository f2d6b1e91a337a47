#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bwave::tools {

/// Entry point of the `bwave` command. Returns 0 on success, 1 when a
/// verification fails (a JSON failure report is written), 2 on usage or
/// configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace bwave::tools
