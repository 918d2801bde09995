#pragma once

#include <string>
#include <vector>

#include "tqg/config.hpp"
#include "tqg/diagnostics.hpp"

namespace tqg {

struct RunOptions {
    /// Resume from a state snapshot; the previous diagnostics CSV supplies
    /// the record whose running BKM integral the resumed run continues.
    std::string resume_snapshot;
    std::string resume_csv;
    bool quiet = false;  // suppress the verdict line on stdout
};

struct RunResult {
    BlowupVerdict verdict;
    std::vector<DiagnosticsRecord> series;
    std::string diagnostics_path;
    std::string output_dir;
};

/// Advance from t = 0 (or the resume point) to t_end, or until a verdict
/// interrupts. Writes diagnostics.csv (with a trailing completeness marker),
/// snapshots at the configured cadence, static_fields.tqg (f and h), and the
/// resolved config. Deterministic given the config, including the seed.
RunResult run_simulation(const SimConfig& config, const RunOptions& options = {});

}  // namespace tqg
