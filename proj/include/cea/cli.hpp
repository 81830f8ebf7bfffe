#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cea {

/// Command-line frontend. Exit codes: 0 success, 2 spec validation failure,
/// 3 domain/solver error, 4 bad usage. Every error is additionally reported
/// as a single-line JSON object on the error stream.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cea
