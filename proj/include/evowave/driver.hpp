#pragma once

#include <cstdint>
#include <string>

#include "evowave/config.hpp"

namespace evowave {

struct CommandResult {
  int exit_code = 0;   // 0 ok, 1 check failed
  std::string report;  // human-readable summary
  double value = 0.0;  // command-specific headline number
};

/// Integrates the configured problem and writes energy.csv, snapshots,
/// interface_residuals.csv and manifest.txt into out_dir.
CommandResult cmd_run(const SimulationConfig& config, const std::string& out_dir,
                      std::uint64_t seed, const std::string& base_dir = ".");

/// Builds every operator for the configured grid, runs adjoint and skew
/// probes, writes defects.csv; exit 0 iff all defects <= 1e-12. `value` is
/// the worst defect.
CommandResult cmd_check_adjoint(const SimulationConfig& config,
                                const std::string& out_dir, std::uint64_t seed,
                                const std::string& base_dir = ".");

/// Emits the positivity certificate as text and CSV; exit 0 iff it passes.
/// `value` is the certified c0.
CommandResult cmd_check_positivity(const SimulationConfig& config,
                                   const std::string& out_dir,
                                   const std::string& base_dir = ".");

/// Dyadic refinements in time (against the dense group oracle when under the
/// cap, else self-convergence) and in space; writes convergence.csv; exit 0
/// iff the observed temporal order >= 1.8. `value` is the temporal order.
CommandResult cmd_convergence(const SimulationConfig& config, int levels,
                              const std::string& out_dir, std::uint64_t seed,
                              const std::string& base_dir = ".");

/// Emits the two window descendants and their difference support; exit 0 iff
/// both are skew and the difference is confined to the window-edge
/// rows/columns.
CommandResult cmd_demo_order_dependence(long n, const std::string& out_dir);

}  // namespace evowave
