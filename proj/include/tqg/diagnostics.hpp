#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqg/dynamics.hpp"

namespace tqg {

/// One sampled row of every monitored quantity. bkm_integral is the running
/// trapezoid integral of (||q||_inf + ||grad b||_inf), chained through prev.
struct DiagnosticsRecord {
    double t = 0;
    double b_sob3 = 0;              // ||b||_{3,2}
    double q_sob2 = 0;              // ||q||_{2,2}
    double pair_norm = 0;           // b_sob3 + q_sob2
    double q_sup = 0;               // ||q||_inf
    double grad_b_sup = 0;          // ||grad b||_inf
    double bkm_integrand = 0;       // q_sup + grad_b_sup
    double bkm_integral = 0;        // K(t)
    double g_val = 0;               // e + pair_norm
    double u_w1inf = 0;             // ||u||_{1,inf}
    double b_l2 = 0;                // ||b||_2, conservation tracer
    double spectral_tail_frac = 0;  // top-third band energy fraction of q
};

/// Compute a record for a finite state; bkm_integral extends prev by the
/// trapezoid rule over [prev->t, state.t], or starts at 0 without prev.
DiagnosticsRecord record(const TqgState& state, const TqgParams& params,
                         const DiagnosticsRecord* prev = nullptr);

/// Growth-envelope evaluation: bound(t) = g(0)^{exp(c K_t)} exp[c t exp(c K_t)]
/// against the observed g(t), with margins reported in ln ln coordinates
/// (the double exponential makes raw margins uninformative).
struct EnvelopeVerdict {
    double c_calibrated = 0;
    double K_used = 0;  // final running integral of the series
    std::vector<std::pair<double, double>> bound_curve;  // (t, bound(t))
    bool violated = false;
    double margin = 0;  // min over evaluated samples of lnln bound - lnln g
};

/// With c supplied, evaluates every sample after the first. Otherwise
/// calibrates the smallest admissible c on the first calib_window fraction
/// of the series and evaluates violation only on the remainder.
/// Throws on an empty series or non-increasing times.
EnvelopeVerdict envelope_verdict(const std::vector<DiagnosticsRecord>& series,
                                 std::optional<double> c = std::nullopt,
                                 double calib_window = 0.5);

/// Residuals of the integral form of the two evolution equations,
///   || b(T) - b0 + int div(b u) ||_2   and
///   || q(T) - q0 + int [div((q-b)u) + div(b u_h)] ||_2,
/// trapezoid time quadrature over uniformly spaced snapshots, each
/// normalized by the initial-field L2 norm when nonzero.
/// Requires >= 3 uniformly spaced snapshots.
std::pair<double, double> strong_solution_residual(
    const std::vector<TqgState>& trajectory, const TqgParams& params);

enum class RunEnd {
    kCompleted,            // reached t_end with finite norms
    kNormDivergence,       // pair norm crossed the ceiling, tail small
    kResolutionExhausted,  // top-third spectral band above 1% of energy
    kNanAbort,             // non-finite values appeared
};

const char* run_end_name(RunEnd end);

/// Process exit status for a run verdict (0 / 3 / 4 / 5).
int run_end_exit_code(RunEnd end);

struct BlowupVerdict {
    RunEnd end = RunEnd::kCompleted;
    double final_bkm_integral = 0;
    bool integrand_growing = false;
    std::string message;
};

/// Classify how a run ended. norm_ceiling is the absolute pair-norm ceiling
/// (configured factor times the initial pair norm); the tail check trumps
/// the norm check so under-resolution is never reported as divergence.
BlowupVerdict blowup_verdict(const std::vector<DiagnosticsRecord>& series,
                             bool nan_aborted, double norm_ceiling);

}  // namespace tqg
