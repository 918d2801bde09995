#include "tqg/dynamics.hpp"

#include "tqg/helmholtz.hpp"
#include "tqg/spectral.hpp"

namespace tqg {

TqgParams::TqgParams(ScalarField f_, ScalarField h_, bool dealias, double dt_,
                     double cfl)
    : f(std::move(f_)),
      h(std::move(h_)),
      dealias_on(dealias),
      dt(dt_),
      cfl_target(cfl) {
    require_same_grid(f.grid, h.grid, "TqgParams");
    if (!(dt > 0)) throw std::invalid_argument("TqgParams: dt must be positive");
    if (!(cfl_target > 0 && cfl_target < 1))
        throw std::invalid_argument("TqgParams: cfl_target must be in (0,1)");
    u_h = bathymetry_velocity(h);
    f_hat = forward_transform(f);
}

VectorField bathymetry_velocity(const ScalarField& h) {
    VectorField uh = perp_gradient(h);
    uh.x_comp *= 0.5;
    uh.y_comp *= 0.5;
    return uh;
}

ScalarField advect(const ScalarField& s, const VectorField& u, bool dealias_on) {
    require_same_grid(s.grid, u.grid(), "advect");
    VectorField gs = gradient(s);
    ScalarField out(s.grid);
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = u.x_comp.values[i] * gs.x_comp.values[i] +
                        u.y_comp.values[i] * gs.y_comp.values[i];
    return dealias_on ? dealias(out) : out;
}

namespace {

// One fused RHS evaluation; shares the spectral transforms of b and q
// across the three advection products (12 FFTs per call).
std::pair<ScalarField, ScalarField> rhs_impl(const TqgState& s,
                                             const TqgParams& p) {
    const Grid& g = s.b.grid;
    SpectralField bh = forward_transform(s.b);
    SpectralField qh = forward_transform(s.q);

    // u = perp-grad (Lap-1)^{-1} (q - f), all in spectral space
    SpectralField wh(g);
    for (size_t i = 0; i < wh.coeffs.size(); ++i)
        wh.coeffs[i] = qh.coeffs[i] - p.f_hat.coeffs[i];
    const int n = g.n;
    for (int i = 0; i < n; ++i) {
        const double kx = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = g.wavenumber(j);
            wh.at(i, j) /= -(1.0 + kx * kx + ky * ky);
        }
    }
    ScalarField ux = inverse_transform(spectral_derivative(wh, 1, 1));
    ux *= -1.0;
    ScalarField uy = inverse_transform(spectral_derivative(wh, 0, 1));

    ScalarField bx = inverse_transform(spectral_derivative(bh, 0, 1));
    ScalarField by = inverse_transform(spectral_derivative(bh, 1, 1));
    for (size_t i = 0; i < qh.coeffs.size(); ++i) qh.coeffs[i] -= bh.coeffs[i];
    ScalarField mx = inverse_transform(spectral_derivative(qh, 0, 1));
    ScalarField my = inverse_transform(spectral_derivative(qh, 1, 1));

    ScalarField db(g), dq(g);
    for (size_t i = 0; i < db.values.size(); ++i) {
        const double uxv = ux.values[i], uyv = uy.values[i];
        db.values[i] = -(uxv * bx.values[i] + uyv * by.values[i]);
        dq.values[i] = -(uxv * mx.values[i] + uyv * my.values[i]) -
                       (p.u_h.x_comp.values[i] * bx.values[i] +
                        p.u_h.y_comp.values[i] * by.values[i]);
    }
    // products can overflow even when the state is still finite
    if (!db.is_finite() || !dq.is_finite()) throw BlowupError(s.t);
    if (p.dealias_on) {
        db = dealias(db);
        dq = dealias(dq);
    }
    return {std::move(db), std::move(dq)};
}

}  // namespace

std::pair<ScalarField, ScalarField> tqg_rhs(const TqgState& state,
                                            const TqgParams& params) {
    require_same_grid(state.b.grid, params.f.grid, "tqg_rhs");
    require_same_grid(state.b.grid, state.q.grid, "tqg_rhs");
    if (!state.b.is_finite() || !state.q.is_finite()) throw BlowupError(state.t);
    auto rhs = rhs_impl(state, params);
    if (!rhs.first.is_finite() || !rhs.second.is_finite())
        throw BlowupError(state.t);
    return rhs;
}

TqgState rk4_step(const TqgState& state, const TqgParams& params, double dt) {
    auto k1 = tqg_rhs(state, params);

    TqgState s2{state.b, state.q, state.t};
    axpy(s2.b, 0.5 * dt, k1.first);
    axpy(s2.q, 0.5 * dt, k1.second);
    auto k2 = tqg_rhs(s2, params);

    TqgState s3{state.b, state.q, state.t};
    axpy(s3.b, 0.5 * dt, k2.first);
    axpy(s3.q, 0.5 * dt, k2.second);
    auto k3 = tqg_rhs(s3, params);

    TqgState s4{state.b, state.q, state.t};
    axpy(s4.b, dt, k3.first);
    axpy(s4.q, dt, k3.second);
    auto k4 = tqg_rhs(s4, params);

    TqgState out{state.b, state.q, state.t + dt};
    const double w = dt / 6.0;
    axpy(out.b, w, k1.first);
    axpy(out.b, 2.0 * w, k2.first);
    axpy(out.b, 2.0 * w, k3.first);
    axpy(out.b, w, k4.first);
    axpy(out.q, w, k1.second);
    axpy(out.q, 2.0 * w, k2.second);
    axpy(out.q, 2.0 * w, k3.second);
    axpy(out.q, w, k4.second);
    if (!out.b.is_finite() || !out.q.is_finite()) throw BlowupError(state.t);
    return out;
}

TqgState rk4_step(const TqgState& state, const TqgParams& params) {
    return rk4_step(state, params, params.dt);
}

double cfl_suggest(const TqgState& state, const TqgParams& params) {
    ScalarField w = state.q - params.f;
    VectorField u = velocity_from_streamfunction(invert_helmholtz(w));
    const double speed =
        std::max(sup_norm(u) + sup_norm(params.u_h), 1e-12);
    return params.cfl_target * state.b.grid.dx() / speed;
}

}  // namespace tqg
