/* Experiment driver behind the CLI: loads a JSON config with a "command"
 * discriminator (inpaint, run-inclusion, minimax, validate-schedule),
 * runs the requested solver and writes the artifacts (metrics.csv, PGM
 * images, result.json, schedule_report.json) into the output directory.
 * Identical configs produce byte-identical artifacts apart from the
 * wall-clock column.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fbfpen {

struct ExitCode {
    static constexpr int ok = 0;
    static constexpr int missing_image = 2;
    static constexpr int invalid_config = 3;
    static constexpr int divergence = 4;
};

/// Command-line overrides applied on top of the config file.
struct CliOverrides {
    std::optional<std::string> outdir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iters;
    std::optional<std::string> algorithm;  // "fbf" or "fbf_ep"
    std::optional<bool> record_history;
};

/// Runs the experiment described by the config file; returns an ExitCode
/// value and writes artifacts on disk. Errors are reported on stderr.
int run_experiment(const std::string& config_path, const CliOverrides& overrides = {});

/// Built-in cross-checks (adjoint identities, Moreau identity, mask
/// determinism, solver fixed points). Returns ExitCode::ok when all pass.
int run_selftest();

} // namespace fbfpen
