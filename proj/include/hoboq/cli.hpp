/// @file cli.hpp
/// @brief Command-line surface. Exposed as a function of (args, streams) so
/// tests can run full pipelines in-process and compare captured output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hoboq::cli {

/// Runs one command. `args` excludes the program name. Returns 0 on success
/// or verification pass, 1 on a verification counterexample, 2 on usage or
/// parse errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hoboq::cli
