#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "app/config.hpp"

namespace symtomo::app {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kIntegration = 3 };

int cmd_trajectory(const RunConfig& config, std::ostream& err);
int cmd_tomogram(const RunConfig& config, std::ostream& err);
int cmd_wigner(const RunConfig& config, std::ostream& err);
int cmd_reconstruct(const RunConfig& config, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& err);

/// Full command line (args[0] is the program name). Maps library errors to
/// exit codes and reports them on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& err);

}  // namespace symtomo::app
