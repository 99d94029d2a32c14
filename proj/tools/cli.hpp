#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latvdw::cli {

/// Runs the command line; returns 0 on success, 1 on argument errors, 2 on numerical errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace latvdw::cli
