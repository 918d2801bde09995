#include "tqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tqg/helmholtz.hpp"
#include "tqg/spectral.hpp"

namespace tqg {

DiagnosticsRecord record(const TqgState& state, const TqgParams& params,
                         const DiagnosticsRecord* prev) {
    if (!state.b.is_finite() || !state.q.is_finite())
        throw std::invalid_argument("record: non-finite state");
    DiagnosticsRecord r;
    r.t = state.t;
    r.b_sob3 = sobolev_norm(state.b, 3.0);
    r.q_sob2 = sobolev_norm(state.q, 2.0);
    r.pair_norm = r.b_sob3 + r.q_sob2;
    r.q_sup = sup_norm(state.q);
    r.grad_b_sup = grad_sup_norm(state.b);
    r.bkm_integrand = r.q_sup + r.grad_b_sup;
    if (prev != nullptr)
        r.bkm_integral = prev->bkm_integral +
                         0.5 * (r.t - prev->t) * (prev->bkm_integrand + r.bkm_integrand);
    r.g_val = M_E + r.pair_norm;
    r.u_w1inf = w1_inf_norm(velocity_from_vorticity(state.q, params.f));
    r.b_l2 = sobolev_norm(state.b, 0.0);
    r.spectral_tail_frac = spectral_tail_fraction(state.q, params.dealias_on);
    return r;
}

namespace {

// ln ln of the envelope: ln ln bound = c K_t + ln(ln g0 + c t). Stable for
// the doubly exponential bound itself.
double lnln_bound(double c, double k_t, double t, double ln_g0) {
    return c * k_t + std::log(ln_g0 + c * t);
}

double bound_value(double c, double k_t, double t, double ln_g0) {
    return std::exp(std::exp(c * k_t) * (ln_g0 + c * t));
}

}  // namespace

EnvelopeVerdict envelope_verdict(const std::vector<DiagnosticsRecord>& series,
                                 std::optional<double> c_opt,
                                 double calib_window) {
    if (series.empty())
        throw std::invalid_argument("envelope_verdict: empty series");
    for (size_t i = 1; i < series.size(); ++i)
        if (!(series[i].t > series[i - 1].t))
            throw std::invalid_argument("envelope_verdict: times not strictly increasing");
    if (!(calib_window >= 0.0 && calib_window <= 1.0))
        throw std::invalid_argument("envelope_verdict: calib_window outside [0,1]");

    const double t0 = series.front().t;
    const double ln_g0 = std::log(series.front().g_val);
    const size_t n = series.size();

    // Worst signed violation of the ln ln bound over samples [lo, hi).
    auto worst = [&](double c, size_t lo, size_t hi) {
        double w = -std::numeric_limits<double>::infinity();
        for (size_t i = lo; i < hi; ++i) {
            const double lhs = std::log(std::log(series[i].g_val));
            const double rhs = lnln_bound(c, series[i].bkm_integral,
                                          series[i].t - t0, ln_g0);
            w = std::max(w, lhs - rhs);
        }
        return w;
    };

    EnvelopeVerdict v;
    v.K_used = series.back().bkm_integral;

    size_t eval_begin = 1;  // the first sample satisfies the bound identically
    if (c_opt.has_value()) {
        v.c_calibrated = *c_opt;
    } else {
        const size_t n_calib =
            std::max<size_t>(1, static_cast<size_t>(calib_window * n));
        eval_begin = std::min(n_calib, n);
        // Smallest c making the bound hold on [1, n_calib): the violation is
        // strictly decreasing in c, so bisect after bracketing.
        double lo = 0.0, hi = 1.0;
        if (worst(lo, 1, n_calib) <= 0.0) {
            v.c_calibrated = 0.0;
        } else {
            int guard = 0;
            while (worst(hi, 1, n_calib) > 0.0 && guard++ < 200) hi *= 2.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (worst(mid, 1, n_calib) > 0.0 ? lo : hi) = mid;
            }
            v.c_calibrated = hi;  // upper end: bound certified on the window
        }
    }

    v.bound_curve.reserve(n);
    for (const auto& r : series)
        v.bound_curve.emplace_back(
            r.t, bound_value(v.c_calibrated, r.bkm_integral, r.t - t0, ln_g0));

    v.margin = std::numeric_limits<double>::infinity();
    for (size_t i = eval_begin; i < n; ++i) {
        const double m = lnln_bound(v.c_calibrated, series[i].bkm_integral,
                                    series[i].t - t0, ln_g0) -
                         std::log(std::log(series[i].g_val));
        v.margin = std::min(v.margin, m);
    }
    if (eval_begin >= n) v.margin = 0.0;  // nothing left to evaluate
    v.violated = v.margin < 0.0;
    return v;
}

std::pair<double, double> strong_solution_residual(
    const std::vector<TqgState>& trajectory, const TqgParams& params) {
    if (trajectory.size() < 3)
        throw std::invalid_argument("strong_solution_residual: need >= 3 snapshots");
    const size_t n = trajectory.size();
    const double dt0 = trajectory[1].t - trajectory[0].t;
    for (size_t i = 1; i < n; ++i) {
        const double d = trajectory[i].t - trajectory[i - 1].t;
        if (!(d > 0) || std::abs(d - dt0) > 1e-9 * std::max(dt0, 1.0))
            throw std::invalid_argument(
                "strong_solution_residual: snapshots not uniformly spaced");
    }

    const Grid& g = trajectory.front().b.grid;
    auto flux_div = [&](const ScalarField& s, const VectorField& u) {
        ScalarField px(g), py(g);
        for (size_t i = 0; i < px.values.size(); ++i) {
            px.values[i] = s.values[i] * u.x_comp.values[i];
            py.values[i] = s.values[i] * u.y_comp.values[i];
        }
        ScalarField d = divergence(VectorField(std::move(px), std::move(py)));
        return params.dealias_on ? dealias(d) : d;
    };

    ScalarField int_b(g), int_q(g);
    for (size_t i = 0; i < n; ++i) {
        const TqgState& s = trajectory[i];
        VectorField u = velocity_from_vorticity(s.q, params.f);
        ScalarField db = flux_div(s.b, u);
        ScalarField dq = flux_div(s.q - s.b, u) + flux_div(s.b, params.u_h);
        const double w = (i == 0 || i == n - 1) ? 0.5 * dt0 : dt0;
        axpy(int_b, w, db);
        axpy(int_q, w, dq);
    }

    ScalarField res_b_field = trajectory.back().b - trajectory.front().b + int_b;
    ScalarField res_q_field = trajectory.back().q - trajectory.front().q + int_q;
    double res_b = sobolev_norm(res_b_field, 0.0);
    double res_q = sobolev_norm(res_q_field, 0.0);
    const double b0 = sobolev_norm(trajectory.front().b, 0.0);
    const double q0 = sobolev_norm(trajectory.front().q, 0.0);
    if (b0 > 0) res_b /= b0;
    if (q0 > 0) res_q /= q0;
    return {res_b, res_q};
}

const char* run_end_name(RunEnd end) {
    switch (end) {
        case RunEnd::kCompleted: return "COMPLETED";
        case RunEnd::kNormDivergence: return "NORM_DIVERGENCE";
        case RunEnd::kResolutionExhausted: return "RESOLUTION_EXHAUSTED";
        case RunEnd::kNanAbort: return "NAN_ABORT";
    }
    return "UNKNOWN";
}

int run_end_exit_code(RunEnd end) {
    switch (end) {
        case RunEnd::kCompleted: return 0;
        case RunEnd::kNormDivergence: return 3;
        case RunEnd::kResolutionExhausted: return 4;
        case RunEnd::kNanAbort: return 5;
    }
    return 1;
}

BlowupVerdict blowup_verdict(const std::vector<DiagnosticsRecord>& series,
                             bool nan_aborted, double norm_ceiling) {
    if (series.empty())
        throw std::invalid_argument("blowup_verdict: empty series");
    const DiagnosticsRecord& last = series.back();
    BlowupVerdict v;
    v.final_bkm_integral = last.bkm_integral;
    v.integrand_growing =
        series.size() >= 2 &&
        last.bkm_integrand > series[series.size() - 2].bkm_integrand;

    std::ostringstream msg;
    if (nan_aborted) {
        v.end = RunEnd::kNanAbort;
        msg << "non-finite values at t > " << last.t;
    } else if (last.spectral_tail_frac > 0.01) {
        // Under-resolution trumps any divergence claim.
        v.end = RunEnd::kResolutionExhausted;
        msg << "top-third spectral band of q holds "
            << 100.0 * last.spectral_tail_frac << "% of its energy";
    } else if (last.pair_norm > norm_ceiling) {
        v.end = RunEnd::kNormDivergence;
        msg << "pair norm " << last.pair_norm << " exceeded ceiling "
            << norm_ceiling << " (finite threshold, a proxy for divergence)";
    } else {
        v.end = RunEnd::kCompleted;
        msg << "finite norms at t = " << last.t;
    }
    msg << "; K = " << v.final_bkm_integral << ", BKM integrand "
        << (v.integrand_growing ? "growing" : "not growing")
        << " (finite-time blow-up requires the BKM integral to diverge)";
    v.message = msg.str();
    return v;
}

}  // namespace tqg
