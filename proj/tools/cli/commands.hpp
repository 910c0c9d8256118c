#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <worldfunc/io.hpp>

#include "cli/manifest.hpp"

namespace worldfunc::cli {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2 };

/// Runs a fully resolved command config (as stored in a manifest) and
/// returns its outputs. cfg["command"] selects the command.
std::vector<NamedOutput> run_command(const json& cfg);

SolverConfig solver_config_from_json(const json& j, SolverConfig base = {});
TubeSamplerConfig tube_config_from_json(const json& j, TubeSamplerConfig base = {});

/// Entire command-line program; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace worldfunc::cli
