#pragma once

#include <string>

#include "hhlab/config.hpp"
#include "hhlab/solver.hpp"

namespace hh {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitVerify = 3, kExitEscape = 4 };

int run_cli(int argc, char** argv);

// Writers shared by the subcommands; every artifact starts with a
// "# ... config_hash=<hex>" line.
void write_series_csv(std::ostream& os, const SimulationRun& run, const std::string& hash);
std::string classify_report(const ExponentTriple& e);

// Reads the config_hash from an artifact's first line; empty if absent.
std::string artifact_hash(const std::string& path);

}  // namespace hh
