#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace patcalc {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 negative verdict, 2 parse or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patcalc
