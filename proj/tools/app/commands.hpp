#pragma once

#include "config.hpp"
#include "output.hpp"

namespace gupjc::app {

Outputs cmd_rabi(const RunConfig& cfg);
Outputs cmd_dispersive(const RunConfig& cfg);
Outputs cmd_wigner_diff(const RunConfig& cfg);
Outputs cmd_zeta_maps(const RunConfig& cfg);

/// Dispatches on cfg.command, creates the output directory and writes the
/// run config, manifest and run log next to the command's own files.
Outputs run_command(const RunConfig& cfg);

}  // namespace gupjc::app
