#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lfin {

/// Runs the command line tool; `args` excludes the program name. Exit status
/// 0 on success, 1 on a negative verdict, 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfin
