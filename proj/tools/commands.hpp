// commands.hpp: Subcommands of the jcprop executable

#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace jcprop::app {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_numerical = 2, exit_io = 3 };

// Output goes to cfg.out, or to `out` when cfg.out is empty. Progress and verdicts go to `log`.
int cmd_quasimode(const RunConfig& cfg, std::ostream& out, std::ostream& log);
// Writes the grid to cfg.out (default joint_spectrum.csv) and, for csv, a sidecar <out>.json.
int cmd_scatter(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& log);

// "%.17g"
std::string format_full(double v);

} // namespace jcprop::app
