#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end. Exit codes: 0 on success, 1 when a solver or file
// operation fails, 2 for usage and configuration mistakes (unknown flags or
// config keys, out-of-range parameters, malformed grids).
//
// Every command writes a run.json manifest into its output directory: the
// merged configuration, version, timestamps, status, and a checksum
// inventory of the files produced. The manifest carries timestamps, so
// byte-level determinism comparisons should skip it and compare the data
// files it lists.
namespace nematicon::cli {

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Same, for driving the CLI in-process: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace nematicon::cli
