#include "tqg/helmholtz.hpp"

#include <stdexcept>

#include "tqg/spectral.hpp"

namespace tqg {

namespace {

SpectralField invert_helmholtz_spectral(const SpectralField& wh) {
    const int n = wh.grid.n;
    SpectralField psih(wh.grid);
    for (int i = 0; i < n; ++i) {
        const double kx = wh.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = wh.grid.wavenumber(j);
            psih.at(i, j) = -wh.at(i, j) / (1.0 + kx * kx + ky * ky);
        }
    }
    return psih;
}

}  // namespace

ScalarField invert_helmholtz(const ScalarField& w) {
    return inverse_transform(invert_helmholtz_spectral(forward_transform(w)));
}

VectorField velocity_from_streamfunction(const ScalarField& psi) {
    return perp_gradient(psi);
}

VectorField velocity_from_vorticity(const ScalarField& q, const ScalarField& f) {
    require_same_grid(q.grid, f.grid, "velocity_from_vorticity");
    return velocity_from_streamfunction(invert_helmholtz(q - f));
}

double master_estimate_ratio(const ScalarField& w, int k) {
    if (k < 0 || k > 2)
        throw std::invalid_argument("master_estimate_ratio: k must be in {0, 1, 2}");
    const double wn = sobolev_norm(w, static_cast<double>(k));
    if (wn == 0.0) return 0.0;
    ScalarField zero(w.grid);
    VectorField u = velocity_from_vorticity(w, zero);
    return sobolev_norm(u, static_cast<double>(k + 1)) / wn;
}

double w1_inf_norm(const VectorField& u) {
    double m = sup_norm(u);
    VectorField gx = gradient(u.x_comp);
    VectorField gy = gradient(u.y_comp);
    for (const ScalarField* comp : {&gx.x_comp, &gx.y_comp, &gy.x_comp, &gy.y_comp})
        m = std::max(m, sup_norm(*comp));
    return m;
}

VelocityBoundReport log_bound_report(const ScalarField& w) {
    const double w_sup = sup_norm(w);
    if (w_sup == 0.0)
        throw std::invalid_argument("log_bound_report: zero field, ratio undefined");
    ScalarField zero(w.grid);
    VectorField u = velocity_from_vorticity(w, zero);
    VelocityBoundReport rep;
    rep.lhs = w1_inf_norm(u);
    rep.rhs_raw = 1.0 + (1.0 + 2.0 * log_plus(sobolev_norm(w, 2.0))) * w_sup;
    rep.ratio = rep.lhs / rep.rhs_raw;
    return rep;
}

}  // namespace tqg
