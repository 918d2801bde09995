#include "tqg/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tqg/diag_csv.hpp"
#include "tqg/snapshot.hpp"
#include "tqg/spectral.hpp"

namespace tqg {

namespace {

std::string snapshot_name(long long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%08lld.tqg", step);
    return buf;
}

}  // namespace

RunResult run_simulation(const SimConfig& config, const RunOptions& options) {
    namespace fs = std::filesystem;
    const Grid grid(config.n, config.length);

    ScalarField f = build_field(config.f_spec, grid);
    ScalarField h = build_field(config.h_spec, grid);
    if (config.dealias_on) {
        f = dealias(f);
        h = dealias(h);
    }
    // params.dt is only a reference value under auto stepping
    const double dt_fixed = config.dt.value_or(config.max_dt);
    TqgParams params(std::move(f), std::move(h), config.dealias_on, dt_fixed,
                     config.cfl_target);

    TqgState state;
    DiagnosticsRecord prev_rec;
    bool have_prev = false;
    long long step0 = 0;
    const bool resuming = !options.resume_snapshot.empty();
    if (resuming) {
        state = read_state_snapshot(options.resume_snapshot);
        require_same_grid(state.b.grid, grid, "run_simulation resume");
        if (!options.resume_csv.empty()) {
            auto rows = read_diag_csv(options.resume_csv);
            for (const auto& r : rows)
                if (r.t <= state.t + 1e-12) {
                    prev_rec = r;
                    have_prev = true;
                }
        }
        // Reconstruct the global step count so t = step*dt stays bit-exact
        // across the split when the step size is unchanged.
        if (config.dt) {
            const double k = state.t / *config.dt;
            if (std::abs(k - std::llround(k)) < 1e-9) {
                step0 = std::llround(k);
                state.t = static_cast<double>(step0) * *config.dt;
            }
        }
    } else {
        state = initial_state(config, grid);
        if (config.dealias_on) {
            state.b = dealias(state.b);
            state.q = dealias(state.q);
        }
    }

    fs::create_directories(config.output_dir);
    const std::string diag_path =
        (fs::path(config.output_dir) / "diagnostics.csv").string();
    std::ofstream csv(diag_path, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open " + diag_path);
    {
        std::ofstream cfg_out(fs::path(config.output_dir) / "config.cfg");
        cfg_out << emit_config(config);
        write_snapshot({&params.f, &params.h}, 0.0,
                       (fs::path(config.output_dir) / "static_fields.tqg").string());
    }

    RunResult result;
    result.diagnostics_path = diag_path;
    result.output_dir = config.output_dir;
    csv << diag_csv_header() << "\n";

    auto sample = [&](const TqgState& s) {
        DiagnosticsRecord rec = record(s, params, have_prev ? &prev_rec : nullptr);
        csv << diag_csv_row(rec) << "\n";
        csv.flush();
        result.series.push_back(rec);
        prev_rec = rec;
        have_prev = true;
        return rec;
    };
    auto snapshot_path = [&](long long step) {
        return (fs::path(config.output_dir) / snapshot_name(step)).string();
    };

    bool nan_aborted = false;
    DiagnosticsRecord first = sample(state);
    const double ceiling = config.norm_ceiling_factor * std::max(first.pair_norm, 1e-300);
    write_snapshot(state, snapshot_path(step0));

    bool stopped = false;
    long long step = step0;
    if (config.dt) {
        // Fixed step: t = step*dt keeps the clock bit-exact across restarts.
        const double dt = *config.dt;
        const double span = config.t_end - state.t;
        const long long n_steps =
            span <= 0 ? 0 : static_cast<long long>(std::floor(span / dt + 1e-9));
        const double remainder = config.t_end - (step0 + n_steps) * dt;
        if (dt > cfl_suggest(state, params))
            std::cerr << "warning: dt = " << dt
                      << " exceeds the CFL suggestion "
                      << cfl_suggest(state, params) << "\n";
        for (long long i = 0; i < n_steps && !stopped; ++i) {
            try {
                state = rk4_step(state, params, dt);
            } catch (const BlowupError&) {
                nan_aborted = true;
                break;
            }
            ++step;
            state.t = static_cast<double>(step) * dt;
            const bool last = i == n_steps - 1 && remainder <= 1e-9 * dt;
            if (step % config.diag_cadence == 0 || last) {
                DiagnosticsRecord rec = sample(state);
                if (rec.spectral_tail_frac > 0.01 || rec.pair_norm > ceiling)
                    stopped = true;
            }
            if (step % config.snapshot_cadence == 0 || last)
                write_snapshot(state, snapshot_path(step));
        }
        if (!nan_aborted && !stopped && remainder > 1e-9 * dt) {
            try {
                state = rk4_step(state, params, remainder);
                state.t = config.t_end;
                sample(state);
                write_snapshot(state, snapshot_path(step + 1));
            } catch (const BlowupError&) {
                nan_aborted = true;
            }
        }
    } else {
        // CFL-driven step size, re-evaluated every step.
        while (state.t < config.t_end - 1e-12 && !stopped) {
            double dt = std::min(cfl_suggest(state, params), config.max_dt);
            dt = std::min(dt, config.t_end - state.t);
            try {
                state = rk4_step(state, params, dt);
            } catch (const BlowupError&) {
                nan_aborted = true;
                break;
            }
            ++step;
            const bool last = state.t >= config.t_end - 1e-12;
            if (step % config.diag_cadence == 0 || last) {
                DiagnosticsRecord rec = sample(state);
                if (rec.spectral_tail_frac > 0.01 || rec.pair_norm > ceiling)
                    stopped = true;
            }
            if (step % config.snapshot_cadence == 0 || last)
                write_snapshot(state, snapshot_path(step));
        }
    }

    result.verdict = blowup_verdict(result.series, nan_aborted, ceiling);
    csv << "# complete: " << run_end_name(result.verdict.end) << "\n";
    csv.flush();
    if (!options.quiet)
        std::cout << "verdict: " << run_end_name(result.verdict.end) << "; "
                  << result.verdict.message << "\n";
    return result;
}

}  // namespace tqg
