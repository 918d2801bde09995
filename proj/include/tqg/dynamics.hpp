#pragma once

#include <stdexcept>
#include <utility>

#include "tqg/field.hpp"

namespace tqg {

/// Raised when a non-finite value shows up during time stepping; carries the
/// simulation time of the last finite state.
struct BlowupError : std::runtime_error {
    explicit BlowupError(double time)
        : std::runtime_error("blow-up detected: non-finite field values"), t(time) {}
    double t;
};

/// Prognostic pair (buoyancy, potential vorticity) plus the simulation clock.
struct TqgState {
    ScalarField b;
    ScalarField q;
    double t = 0;
};

/// Static inputs of a run. u_h and f_hat are derived at construction:
/// u_h = (1/2) perp-grad h, f_hat = forward transform of f.
struct TqgParams {
    ScalarField f;     // Coriolis parameter
    ScalarField h;     // bathymetry variation
    VectorField u_h;   // (1/2) perp-grad h, divergence-free by construction
    SpectralField f_hat;
    bool dealias_on = true;
    double dt = 1e-3;
    double cfl_target = 0.5;

    TqgParams() = default;
    TqgParams(ScalarField f_, ScalarField h_, bool dealias, double dt_,
              double cfl);
};

/// u_h = (1/2) perp-grad h; divergence-free to spectral round-off.
VectorField bathymetry_velocity(const ScalarField& h);

/// (u . grad) s computed pseudo-spectrally: gradient in spectral space,
/// product on the grid, product dealiased when requested.
ScalarField advect(const ScalarField& s, const VectorField& u, bool dealias_on);

/// Right-hand side of the b and q evolution equations:
///   db/dt = -(u . grad) b
///   dq/dt = -(u . grad)(q - b) - (u_h . grad) b
/// with u recovered from q - f through the modified Helmholtz inversion.
/// Throws BlowupError (carrying state.t) on non-finite values.
std::pair<ScalarField, ScalarField> tqg_rhs(const TqgState& state,
                                            const TqgParams& params);

/// Classical four-stage Runge-Kutta update over the signed interval dt.
TqgState rk4_step(const TqgState& state, const TqgParams& params, double dt);

/// rk4_step with params.dt.
TqgState rk4_step(const TqgState& state, const TqgParams& params);

/// cfl_target * dx / max(||u||_inf + ||u_h||_inf, 1e-12). Callers cap the
/// suggestion by their configured max_dt.
double cfl_suggest(const TqgState& state, const TqgParams& params);

}  // namespace tqg
