#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ldlg {

/// Exit codes of the command-line tool.
enum ExitCode { kYes = 0, kNo = 1, kUsage = 2, kIncompatible = 3, kUnknown = 4 };

/// Runs one command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ldlg
