#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace veronese::cli {

/// Runs one command line, program name excluded. Records go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when a check fails or the
/// computation stops, 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace veronese::cli
