#pragma once

#include "nematic_cli/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nematic::cli {

/// Version of the run-record and manifest JSON layout.
inline constexpr int schema_version = 1;

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_nonconvergence = 2,
};

struct RunOutcome
{
    int exit_code = exit_ok;
    /// File names written, relative to the output directory.
    std::vector<std::string> artifacts;
};

/// Executes cfg and writes its artifacts into cfg.output_dir, which is
/// created if needed. Every command writes run.json (the run record).
/// Progress lines go to `log`.
RunOutcome run(RunConfig const& cfg, std::ostream& log);

/// $NEMATIC_OUT_DIR when set and non-empty, otherwise "nematic-out".
std::string default_output_dir();

/// Current UTC time as YYYYMMDDTHHMMSSZ.
std::string utc_timestamp();

/// argv front end. Precedence: built-in defaults < --config file < flags.
int main_entry(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nematic::cli
