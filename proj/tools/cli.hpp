#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minbis::cli {

// Exit codes: 0 success, 2 invalid input or arguments, 1 internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal text with at most 9 significant digits.
std::string format_number(double x);

}  // namespace minbis::cli
