#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>

#include "tqg/diag_csv.hpp"
#include "tqg/greens.hpp"
#include "tqg/run.hpp"
#include "tqg/snapshot.hpp"
#include "tqg/text.hpp"

namespace fs = std::filesystem;
using namespace tqg;

namespace {

// Rebuild TqgParams for diagnose/residual from the artifacts a run leaves
// next to its snapshots (static_fields.tqg and config.cfg).
TqgParams params_from_run_dir(const std::string& static_path,
                              const std::string& config_path) {
    Snapshot statics = read_snapshot(static_path);
    if (statics.fields.size() != 2)
        throw std::runtime_error("expected 2 fields (f, h) in " + static_path);
    SimConfig cfg = load_config_file(config_path);
    return TqgParams(std::move(statics.fields[0]), std::move(statics.fields[1]),
                     cfg.dealias_on, cfg.dt.value_or(cfg.max_dt), cfg.cfl_target);
}

void default_sidecars(const std::string& anchor, std::string& static_path,
                      std::string& config_path) {
    const fs::path dir = fs::path(anchor).parent_path();
    if (static_path.empty()) static_path = (dir / "static_fields.tqg").string();
    if (config_path.empty()) config_path = (dir / "config.cfg").string();
}

int cmd_run(const std::string& config_path, const std::string& resume,
            const std::string& resume_csv) {
    SimConfig cfg = load_config_file(config_path);
    RunOptions opts;
    opts.resume_snapshot = resume;
    opts.resume_csv = resume_csv;
    RunResult result = run_simulation(cfg, opts);
    return run_end_exit_code(result.verdict.end);
}

int cmd_diagnose(const std::vector<std::string>& snapshots,
                 std::string static_path, std::string config_path) {
    default_sidecars(snapshots.front(), static_path, config_path);
    TqgParams params = params_from_run_dir(static_path, config_path);

    std::vector<TqgState> states;
    for (const auto& path : snapshots) states.push_back(read_state_snapshot(path));
    std::sort(states.begin(), states.end(),
              [](const TqgState& a, const TqgState& b) { return a.t < b.t; });

    std::cout << diag_csv_header() << "\n";
    DiagnosticsRecord prev;
    bool have_prev = false;
    for (const auto& s : states) {
        DiagnosticsRecord rec = record(s, params, have_prev ? &prev : nullptr);
        std::cout << diag_csv_row(rec) << "\n";
        prev = rec;
        have_prev = true;
    }
    return 0;
}

int cmd_verify_bound(const std::string& csv_path, std::optional<double> c,
                     double calib) {
    auto rows = read_diag_csv(csv_path);
    EnvelopeVerdict v = envelope_verdict(rows, c, calib);
    std::cout << "c = " << format_double(v.c_calibrated)
              << (c ? " (supplied)" : " (calibrated)") << "\n";
    std::cout << "K = " << format_double(v.K_used) << "\n";
    std::cout << "margin (ln ln) = " << format_double(v.margin) << "\n";
    std::cout << "verdict: " << (v.violated ? "violated" : "not violated") << "\n";
    return v.violated ? 1 : 0;
}

int cmd_kernel_table(double r_min, double r_max, int points) {
    KernelTable table = make_kernel_table(r_min, r_max, points);
    std::cout << "r,K0\n";
    for (size_t i = 0; i < table.radii.size(); ++i)
        std::cout << format_double(table.radii[i]) << ','
                  << format_double(table.values[i]) << "\n";
    return 0;
}

int cmd_residual(const std::string& dir, std::string static_path,
                 std::string config_path) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("snapshot_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".tqg")
            paths.push_back(entry.path().string());
    }
    if (paths.empty()) throw std::runtime_error("no snapshot_*.tqg files in " + dir);
    std::sort(paths.begin(), paths.end());
    default_sidecars(paths.front(), static_path, config_path);
    TqgParams params = params_from_run_dir(static_path, config_path);

    std::vector<TqgState> traj;
    for (const auto& p : paths) traj.push_back(read_state_snapshot(p));
    auto [res_b, res_q] = strong_solution_residual(traj, params);
    std::cout << "snapshots = " << traj.size() << "\n";
    std::cout << "res_b = " << format_double(res_b) << "\n";
    std::cout << "res_q = " << format_double(res_q) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermal quasi-geostrophic pseudo-spectral simulator"};
    app.require_subcommand(1);

    std::string config_path, resume, resume_csv;
    auto* run_cmd = app.add_subcommand("run", "advance a configured simulation");
    run_cmd->add_option("config", config_path, "config file")->required();
    run_cmd->add_option("--resume", resume, "state snapshot to resume from");
    run_cmd->add_option("--resume-csv", resume_csv,
                        "previous diagnostics.csv whose BKM integral to continue");

    std::vector<std::string> snapshots;
    std::string static_path, sidecar_config;
    auto* diag_cmd =
        app.add_subcommand("diagnose", "recompute diagnostics from snapshots");
    diag_cmd->add_option("snapshots", snapshots, "state snapshot files")
        ->required()
        ->expected(-1);
    diag_cmd->add_option("--static", static_path, "static_fields.tqg path");
    diag_cmd->add_option("--config", sidecar_config, "run config path");

    std::string csv_path;
    double c_value = -1;
    double calib = 0.5;
    auto* verify_cmd =
        app.add_subcommand("verify-bound", "growth-envelope report from a CSV");
    verify_cmd->add_option("csv", csv_path, "diagnostics.csv")->required();
    auto* c_opt = verify_cmd->add_option("--c", c_value, "use this constant");
    verify_cmd->add_option("--calib", calib,
                           "calibration fraction of the series (default 0.5)");

    double r_min = 1e-3, r_max = 30.0;
    int points = 200;
    auto* kernel_cmd = app.add_subcommand("kernel-table", "emit K0 values as CSV");
    kernel_cmd->add_option("--min", r_min, "smallest radius");
    kernel_cmd->add_option("--max", r_max, "largest radius");
    kernel_cmd->add_option("--points", points, "number of rows");

    std::string snap_dir;
    std::string res_static, res_config;
    auto* residual_cmd =
        app.add_subcommand("residual", "integral-form residuals from snapshots");
    residual_cmd->add_option("dir", snap_dir, "directory of snapshot_*.tqg")
        ->required();
    residual_cmd->add_option("--static", res_static, "static_fields.tqg path");
    residual_cmd->add_option("--config", res_config, "run config path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*run_cmd) return cmd_run(config_path, resume, resume_csv);
        if (*diag_cmd) return cmd_diagnose(snapshots, static_path, sidecar_config);
        if (*verify_cmd)
            return cmd_verify_bound(
                csv_path, c_opt->count() ? std::optional<double>(c_value) : std::nullopt,
                calib);
        if (*kernel_cmd) return cmd_kernel_table(r_min, r_max, points);
        if (*residual_cmd) return cmd_residual(snap_dir, res_static, res_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
