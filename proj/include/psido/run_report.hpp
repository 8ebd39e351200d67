#pragma once

#include <string>
#include <vector>

namespace psido {

/// One named check with its measured residual; pass iff residual <= tolerance.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;

    bool pass() const { return residual <= tolerance; }
};

/// Batch-run record: echo of the command, per-check outcomes, artifact
/// manifest.  Wall time is reported to the console only so artifact files
/// stay byte-identical across runs.
struct RunReport {
    std::string command;
    std::vector<CheckResult> checks;
    std::vector<std::string> artifacts;
    double wall_time_s = 0.0;

    bool all_pass() const;
    /// Deterministic JSON (no wall time).
    std::string to_json() const;
    /// Console JSON including wall time.
    std::string to_console_json() const;
};

/// Full-precision scientific formatting used by every CSV artifact
/// (17 significant digits).
std::string format_sci(double v);

/// Writes text to path, creating parent directories.
void write_file(const std::string& path, const std::string& text);

}  // namespace psido
