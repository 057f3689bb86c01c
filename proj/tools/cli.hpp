#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssse::cli {

/// Runs the `ssse` command line. args[0] is the program name. Reports and
/// data go to `out` unless --out is given; the resolved configuration and
/// diagnostics go to `err`. Returns 0 on success, 1 on runtime failure and
/// 2 on usage errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssse::cli
