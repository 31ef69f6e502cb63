#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stableopt {

// Exit 0 on success (report on stdout), 2 when an algorithm correctly
// certifies that no solution exists (still with a report), 1 on usage,
// parse or validation errors (messages on stderr).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stableopt
