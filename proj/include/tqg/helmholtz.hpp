#pragma once

#include "tqg/field.hpp"

namespace tqg {

/// Empirical check of the log-Sobolev velocity estimate: the Lipschitz-type
/// norm of the recovered velocity against 1 + (1 + 2 ln+ ||w||_{2,2}) ||w||_inf.
struct VelocityBoundReport {
    double lhs = 0;      // ||u||_{1,inf} = max(sup |u|, max entry of sup |d_i u_j|)
    double rhs_raw = 0;  // 1 + (1 + 2 ln+ ||w||_{2,2}) * ||w||_inf
    double ratio = 0;    // lhs / rhs_raw
};

/// Solve (Laplacian - 1) psi = w spectrally: psi_hat(k) = -w_hat(k)/(1+|k|^2).
/// The operator never vanishes, so there is no zero-mode ambiguity.
ScalarField invert_helmholtz(const ScalarField& w);

/// u = perp-gradient of psi = (-d/dy psi, d/dx psi); divergence-free by
/// construction in spectral space.
VectorField velocity_from_streamfunction(const ScalarField& psi);

/// u = perp-grad (Laplacian - 1)^{-1} (q - f). Throws on grid mismatch.
VectorField velocity_from_vorticity(const ScalarField& q, const ScalarField& f);

/// ||u||_{k+1,2} / ||w||_{k,2} with u recovered from w (f = 0). On the torus
/// the shell-wise factor |k|^2/(1+|k|^2) forces the ratio <= 1 exactly.
/// Defined as 0 for w = 0. Requires k in {0, 1, 2}.
double master_estimate_ratio(const ScalarField& w, int k);

/// max(sup |u|, max over the four entries of ||d_i u_j||_inf).
/// The W^{1,inf} norm with the max convention over entries.
double w1_inf_norm(const VectorField& u);

/// ln+ a = ln a for a >= 1, else 0.
inline double log_plus(double a) { return a >= 1.0 ? std::log(a) : 0.0; }

/// Evaluate the velocity bound quantities for a nonzero w.
/// Throws std::invalid_argument on a zero field (ratio undefined).
VelocityBoundReport log_bound_report(const ScalarField& w);

}  // namespace tqg
