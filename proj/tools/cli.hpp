#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bigres::cli {

/// Runs the command line front end. Returns 0 on success, 1 on a
/// computation error and 2 on a usage or input-file error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bigres::cli
