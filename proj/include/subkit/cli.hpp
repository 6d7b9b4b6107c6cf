#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subkit {

// Exit codes: 0 success / positive verdict, 1 negative verdict,
// 2 unknown, 64 usage error, 65 data error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace subkit
