// commands.hpp - subcommands of the licore command-line tool
//
// Each command turns a validated RunConfig into a Report; run() wires them to
// argument parsing, output files and exit codes.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "licore/cli/report.hpp"
#include "licore/cli/run_config.hpp"

namespace licore::cli {

enum ExitCode : int { Ok = 0, ConfigError = 2, DomainError = 3, IoFailure = 4 };

Report cmd_steady_state(const RunConfig& cfg);
Report cmd_currents(const RunConfig& cfg);
Report cmd_scan(const RunConfig& cfg, int jobs);
Report cmd_tmin(const RunConfig& cfg);
Report cmd_compare(const RunConfig& cfg);
Report cmd_calibrate(const RunConfig& cfg);

// gnuplot-friendly whitespace table of a scan report.
void write_plot_data(std::ostream& out, const Report& scan);

// Full command line, returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace licore::cli
